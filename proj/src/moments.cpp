#include "fqg/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "fqg/parallel.hpp"

namespace fqg {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }
bool divides(std::int64_t n, std::int64_t a) { return a % n == 0; }

CycloNum two_cos_pi(Index n, std::int64_t e) {
  // 2 cos(e pi / n) = zeta_2n^e + zeta_2n^-e
  return CycloNum::root_of_unity(2 * n, e) + CycloNum::root_of_unity(2 * n, -e);
}

bool is_rational_pair(const CycloNum& a, const CycloNum& b) { return a.is_rational() && b.is_rational(); }

std::pair<unsigned, unsigned> letter_counts(const MomentWord& w) {
  unsigned s = 0;
  for (bool b : w) s += b ? 1U : 0U;
  return {static_cast<unsigned>(w.size()) - s, s};
}

}  // namespace

// ---------------------------------------------------------------------------
// Words and tables

std::string word_str(const MomentWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (bool b : w) s += b ? "a*" : "a";
  return s;
}

MomentWord parse_word(const std::string& s) {
  if (s == "1") return {};
  MomentWord w;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 'a') throw std::invalid_argument("bad moment word: " + s);
    const bool star = i + 1 < s.size() && s[i + 1] == '*';
    w.push_back(star);
    if (star) ++i;
  }
  if (w.empty()) throw std::invalid_argument("bad moment word: " + s);
  return w;
}

MomentWord word_adjoint(const MomentWord& w) {
  MomentWord r(w.rbegin(), w.rend());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = !r[i];
  return r;
}

std::optional<CycloNum> MomentTable::lookup(const MomentWord& w) const {
  if (normal) {
    const auto [k, l] = letter_counts(w);
    return lookup(k, l);
  }
  for (const auto& e : entries)
    if (e.word == w) return e.value;
  return std::nullopt;
}

std::optional<CycloNum> MomentTable::lookup(unsigned k, unsigned l) const {
  if (k + l == 0) return CycloNum(1);
  MomentWord canon(k, false);
  canon.insert(canon.end(), l, true);
  for (const auto& e : entries) {
    if (normal) {
      const auto [a, b] = letter_counts(e.word);
      if (a == k && b == l) return e.value;
    } else if (e.word == canon) {
      return e.value;
    }
  }
  return std::nullopt;
}

json moment_value_json(const CycloNum& x) {
  if (x.is_rational()) return json{{"rational", x.to_rational().str()}};
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.str());
  return json{{"m", x.conductor()}, {"coeffs", coeffs}};
}

json moment_table_to_json(const MomentTable& t) {
  json moments = json::array();
  for (const auto& e : t.entries) moments.push_back(json{{"word", word_str(e.word)}, {"value", moment_value_json(e.value)}});
  return json{{"element", t.element}, {"max_order", t.max_order}, {"normal", t.normal}, {"moments", std::move(moments)}};
}

std::string moment_table_to_csv(const MomentTable& t) {
  std::ostringstream os;
  os << "word,value\n";
  for (const auto& e : t.entries) os << word_str(e.word) << "," << e.value.str() << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Haar moments

CycloNum haar_moment(const QuantumGroup& G, const std::vector<AlgElement>& factors) {
  if (factors.empty()) return CycloNum(1);
  if (factors.size() == 2) return haar_product(G, factors[0], factors[1]);
  AlgElement acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
  return G.haar(acc);
}

CycloNum haar_product(const QuantumGroup& G, const AlgElement& x, const AlgElement& y) {
  const Algebra& A = G.algebra();
  if (!A.is_multimatrix()) return G.haar(x * y);
  const auto& blocks = A.blocks();
  const auto& w = G.haar_weights();
  const Terms& yt = y.terms();
  CycloNum acc;
  std::size_t bi = 0;
  for (const auto& [i, xc] : x.terms()) {
    while (bi + 1 < blocks.size() && blocks[bi + 1].offset <= i) ++bi;
    const Block& B = blocks[bi];
    const Index p = (i - B.offset) / B.size;
    const Index q = (i - B.offset) % B.size;
    const Index row = B.offset + q * B.size;
    auto it = std::lower_bound(yt.begin(), yt.end(), row, [](const auto& t, Index v) { return t.first < v; });
    for (; it != yt.end() && it->first < row + B.size; ++it) {
      const Index r = it->first - row;
      const CycloNum& wt = w[B.offset + p * B.size + r];
      if (wt.is_zero()) continue;
      CycloNum t = xc * it->second;
      if (wt.is_rational()) t *= wt.to_rational();
      else t *= wt;
      acc += t;
    }
  }
  return acc;
}

MomentTable star_moments(const QuantumGroup& G, const AlgElement& a, unsigned max_order, std::string descriptor,
                         unsigned cap) {
  if (max_order > cap)
    throw std::invalid_argument("max order " + std::to_string(max_order) + " above cap " + std::to_string(cap));
  MomentTable t;
  t.element = std::move(descriptor);
  t.max_order = max_order;
  t.normal = a.is_normal();
  if (max_order == 0) return t;
  const AlgElement as = a.star();

  if (t.normal) {
    std::vector<AlgElement> P{AlgElement::unit(a.algebra())}, Q{AlgElement::unit(a.algebra())};
    for (unsigned i = 1; i <= max_order; ++i) {
      P.push_back(P.back() * a);
      Q.push_back(Q.back() * as);
    }
    std::vector<std::pair<unsigned, unsigned>> kl;
    for (unsigned m = 1; m <= max_order; ++m)
      for (unsigned k = m + 1; k-- > 0;) kl.emplace_back(k, m - k);
    std::vector<CycloNum> values(kl.size());
    parallel_for(kl.size(), [&](std::size_t i) {
      const auto [k, l] = kl[i];
      values[i] = l == 0 ? G.haar(P[k]) : k == 0 ? G.haar(Q[l]) : haar_product(G, P[k], Q[l]);
    });
    for (std::size_t i = 0; i < kl.size(); ++i) {
      MomentWord w(kl[i].first, false);
      w.insert(w.end(), kl[i].second, true);
      t.entries.push_back({std::move(w), std::move(values[i])});
    }
    return t;
  }

  // depth-first over words with prefix products; lexicographic with a < a*
  for (unsigned m = 1; m <= max_order; ++m) {
    std::vector<std::pair<MomentWord, AlgElement>> stack;
    stack.push_back({{}, AlgElement::unit(a.algebra())});
    std::vector<MomentEntry> level;
    while (!stack.empty()) {
      auto [w, prod] = std::move(stack.back());
      stack.pop_back();
      if (w.size() + 1 == m) {
        for (bool s : {false, true}) {
          MomentWord ww = w;
          ww.push_back(s);
          level.push_back({std::move(ww), haar_product(G, prod, s ? as : a)});
        }
        continue;
      }
      for (bool s : {true, false}) {
        MomentWord ww = w;
        ww.push_back(s);
        stack.push_back({std::move(ww), prod * (s ? as : a)});
      }
    }
    for (auto& e : level) t.entries.push_back(std::move(e));
  }
  return t;
}

CycloNum joint_moment(const QuantumGroup& G, const std::vector<AlgElement>& elements) {
  return haar_moment(G, elements);
}

// ---------------------------------------------------------------------------
// Cumulants

CommutationError::CommutationError(std::size_t i, std::size_t j)
    : std::invalid_argument("elements " + std::to_string(i) + " and " + std::to_string(j) + " do not commute"),
      first(i),
      second(j) {}

std::vector<SetPartition> set_partitions(std::size_t r) {
  std::vector<SetPartition> out;
  if (r == 0) {
    out.push_back({});
    return out;
  }
  // restricted growth strings
  std::vector<std::size_t> a(r, 0), mx(r, 0);
  while (true) {
    SetPartition p;
    std::size_t nb = *std::max_element(a.begin(), a.end()) + 1;
    p.blocks.resize(nb);
    for (std::size_t i = 0; i < r; ++i) p.blocks[a[i]].push_back(i);
    out.push_back(std::move(p));
    std::size_t i = r - 1;
    while (i > 0 && a[i] == mx[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    mx[i] = std::max(mx[i - 1], a[i]);
    for (std::size_t j = i + 1; j < r; ++j) {
      a[j] = 0;
      mx[j] = mx[i];
    }
  }
  return out;
}

namespace {

unsigned block_mask(const std::vector<std::size_t>& b) {
  unsigned m = 0;
  for (auto i : b) m |= 1U << i;
  return m;
}

}  // namespace

CycloNum cumulant_from_moments(std::size_t r, const std::function<CycloNum(unsigned)>& moment) {
  std::map<unsigned, CycloNum> memo;
  auto mom = [&](unsigned m) -> const CycloNum& {
    auto it = memo.find(m);
    if (it == memo.end()) it = memo.emplace(m, moment(m)).first;
    return it->second;
  };
  CycloNum acc;
  for (const auto& p : set_partitions(r)) {
    const std::size_t nb = p.blocks.size();
    CycloNum prod(Rational(factorial(static_cast<unsigned>(nb - 1))) * Rational(nb % 2 == 1 ? 1 : -1));
    for (const auto& b : p.blocks) {
      prod *= mom(block_mask(b));
      if (prod.is_zero()) break;
    }
    acc += prod;
  }
  return acc;
}

CycloNum moment_from_cumulants(std::size_t r, const std::function<CycloNum(unsigned)>& cumulant) {
  CycloNum acc;
  for (const auto& p : set_partitions(r)) {
    CycloNum prod(1);
    for (const auto& b : p.blocks) prod *= cumulant(block_mask(b));
    acc += prod;
  }
  return acc;
}

CycloNum cumulant(const QuantumGroup& G, const std::vector<AlgElement>& elements, std::size_t cap) {
  const std::size_t r = elements.size();
  if (r == 0) throw std::invalid_argument("cumulant of an empty family");
  if (r > cap) throw std::invalid_argument("cumulant order " + std::to_string(r) + " above cap " + std::to_string(cap));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (!elements[i].commutes_with(elements[j])) throw CommutationError(i, j);
  return cumulant_from_moments(r, [&](unsigned mask) {
    std::vector<AlgElement> f;
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1U << i)) f.push_back(elements[i]);
    return haar_moment(G, f);
  });
}

// ---------------------------------------------------------------------------
// Reference laws

RefDist RefDist::dirac(CycloNum x) {
  RefDist d;
  d.tag = Tag::kDirac;
  d.name = "dirac(" + x.str() + ")";
  d.point = std::move(x);
  return d;
}

RefDist RefDist::arcsine() {
  RefDist d;
  d.tag = Tag::kArcsine;
  d.name = "arcsine(-2,2)";
  return d;
}

RefDist RefDist::c_arcsine(Rational alpha) {
  RefDist d;
  d.tag = Tag::kCArcsine;
  d.name = "c_arcsine(" + alpha.str() + ")";
  d.scale = std::move(alpha);
  return d;
}

RefDist RefDist::uniform_circle(Rational radius) {
  RefDist d;
  d.tag = Tag::kUniformCircle;
  d.name = "uniform_circle(" + radius.str() + ")";
  d.scale = std::move(radius);
  return d;
}

RefDist RefDist::mixture(std::vector<std::pair<Rational, RefDist>> parts, std::string name) {
  RefDist d;
  d.tag = Tag::kMixture;
  if (name.empty()) {
    for (std::size_t i = 0; i < parts.size(); ++i)
      name += (i ? " + " : "") + parts[i].first.str() + " " + parts[i].second.name;
  }
  d.name = std::move(name);
  d.components = std::move(parts);
  return d;
}

RefDist RefDist::kp_law(int index) {
  const Rational h(1, 2);
  switch (index) {
    case 0:
      return mixture({{1, dirac(2)}}, "mu0");
    case 1:
      return mixture({{Rational(1, 8), dirac(-2)}, {Rational(3, 4), dirac(0)}, {Rational(1, 8), dirac(2)}}, "mu1");
    case 2:
      return mixture({{h, dirac(0)}, {h, dirac(2)}}, "mu2");
    case 4:
      return mixture({{h, dirac(-2)}, {h, dirac(2)}}, "mu4");
    default:
      throw std::invalid_argument("law index must be 0, 1, 2 or 4");
  }
}

RefDist RefDist::dual_normalized(Index n, unsigned k) {
  if (n == 0 || k == 0) throw std::invalid_argument("dual_normalized needs n, k >= 1");
  const auto g = static_cast<std::int64_t>(std::gcd<std::uint64_t>(k, n));
  const Rational nn2(static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n));
  const Rational mass = Rational(g) / nn2;
  const std::string name = "dual_normalized(" + std::to_string(n) + "," + std::to_string(k) + ")";
  if (k % 2 == 1)
    return mixture({{mass / Rational(2), dirac(-1)}, {mass / Rational(2), dirac(1)}, {Rational(1) - mass, dirac(0)}},
                   name);
  return mixture({{mass, dirac(1)}, {Rational(1) - mass, dirac(0)}}, name);
}

CycloNum refdist_moment(const RefDist& d, unsigned k, unsigned l) {
  switch (d.tag) {
    case RefDist::Tag::kDirac:
      if (k + l == 0) return CycloNum(1);
      return d.point.pow(k) * d.point.conj().pow(l);
    case RefDist::Tag::kArcsine: {
      const unsigned m = k + l;
      if (m % 2 == 1) return CycloNum(0);
      return CycloNum(Rational(binomial(m, m / 2)));
    }
    case RefDist::Tag::kCArcsine: {
      if (k != l) return CycloNum(0);
      const Rational half = d.scale / Rational(2);
      return CycloNum(half.pow(2 * k) * Rational(binomial(2 * k, k)));
    }
    case RefDist::Tag::kUniformCircle:
      if (k != l) return CycloNum(0);
      return CycloNum(d.scale.pow(2 * k));
    case RefDist::Tag::kMixture: {
      CycloNum acc;
      for (const auto& [w, c] : d.components) {
        CycloNum m = refdist_moment(c, k, l);
        m *= w;
        acc += m;
      }
      return acc;
    }
  }
  return CycloNum(0);
}

// ---------------------------------------------------------------------------
// Kac-Paljutkin closed forms

int kp_law_index(unsigned k) {
  if (k % 2 == 1) return 1;
  if (k % 4 == 2) return 2;
  if (k % 8 == 4) return 4;
  return 0;
}

Rational closed_form_kp_joint(const std::vector<unsigned>& ks) {
  const auto r = static_cast<int>(ks.size());
  int n1 = 0, n2 = 0, n4 = 0;
  for (unsigned k : ks) {
    switch (kp_law_index(k)) {
      case 1: ++n1; break;
      case 2: ++n2; break;
      case 4: ++n4; break;
      default: break;
    }
  }
  auto pow2 = [](int e) { return e >= 0 ? Rational(std::int64_t{1} << e) : Rational(1, std::int64_t{1} << -e); };
  if (n1 % 2 == 1) return 0;
  if (n1 > 0) return pow2(r - 2);
  if (n2 >= 1) return pow2(r - 1);
  return pow2(r - 1) * Rational(n4 % 2 == 0 ? 2 : 0);
}

AlgElement closed_form_kp_char(const QuantumGroup& kp, unsigned k) {
  const Algebra& A = kp.algebra();
  // e1 e2 e3 e4 E11 E12 E21 E22
  Terms t;
  switch (kp_law_index(k)) {
    case 1:
      t = {{0, 2}, {3, -2}};
      break;
    case 2:
      t = {{0, 2}, {1, 2}, {2, 2}, {3, 2}};
      break;
    case 4:
      t = {{0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, -2}, {7, -2}};
      break;
    default:
      t = {{0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {7, 2}};
      break;
  }
  return AlgElement(A, std::move(t));
}

// ---------------------------------------------------------------------------
// Sekine closed forms

CycloNum sekine_block_coefficient(Index n, std::int64_t u, std::int64_t v, std::int64_t k, BlockCoefficient rule) {
  const std::int64_t e = rule == BlockCoefficient::kDerived ? k * u * v : k * v * v;
  return two_cos_pi(n, mod(e, 2 * static_cast<std::int64_t>(n)));
}

AlgElement closed_form_sekine_char(const QuantumGroup& G, std::int64_t u, std::int64_t v, std::int64_t k,
                                   BlockCoefficient rule) {
  const Index n = G.param();
  const auto nn = static_cast<std::int64_t>(n);
  const SekineLayout L{n};
  Terms t;
  for (std::int64_t s = 0; s < nn; ++s)
    for (std::int64_t tt = 0; tt < nn; ++tt) {
      // 2 eta^{ksu} cos(2 pi k t v / n)
      const CycloNum c = CycloNum::root_of_unity(n, k * s * u) *
                         (CycloNum::root_of_unity(n, k * tt * v) + CycloNum::root_of_unity(n, -k * tt * v));
      if (!c.is_zero()) t.emplace_back(L.e(s, tt), c);
    }
  if (k % 2 == 0) {
    const CycloNum c = sekine_block_coefficient(n, u, v, k, rule);
    if (!c.is_zero())
      for (std::int64_t r = 0; r < nn; ++r) t.emplace_back(L.E(r, r + k * u), c);
  }
  return AlgElement(G.algebra(), sparse::normalize(std::move(t)));
}

Rational closed_form_sekine_moments(Index n, std::int64_t u, std::int64_t v, unsigned r1, unsigned rs) {
  const auto nn = static_cast<std::int64_t>(n);
  if (!divides(nn, (static_cast<std::int64_t>(r1) - static_cast<std::int64_t>(rs)) * u)) return 0;
  const unsigned m = r1 + rs;
  Integer acc = 0;
  for (unsigned l = 0; l <= m; ++l)
    if (divides(nn, (2 * static_cast<std::int64_t>(l) - static_cast<std::int64_t>(m)) * v)) acc += binomial(m, l);
  return Rational(acc) / Rational(2);
}

CycloNum closed_form_sekine_even(Index n, std::int64_t u, std::int64_t v, std::int64_t k, unsigned alpha, unsigned beta,
                                 BlockCoefficient rule) {
  const auto nn = static_cast<std::int64_t>(n);
  if (!divides(nn, k * u * (static_cast<std::int64_t>(alpha) - static_cast<std::int64_t>(beta)))) return CycloNum(0);
  CycloNum c = sekine_block_coefficient(n, u, v, k, rule).pow(alpha + beta);
  c *= Rational(1, 2);
  return c;
}

CycloNum closed_form_sekine_char_moment(Index n, std::int64_t u, std::int64_t v, std::int64_t k, unsigned r1,
                                        unsigned rs, BlockCoefficient rule) {
  if (r1 + rs == 0) return CycloNum(1);
  CycloNum e(closed_form_sekine_moments(n, k * u, k * v, r1, rs));
  if (k % 2 == 0) e += closed_form_sekine_even(n, u, v, k, r1, rs, rule);
  return e;
}

// ---------------------------------------------------------------------------
// Dual closed forms

Rational closed_form_dual_moments(Index n, const std::vector<unsigned>& ks) {
  if (ks.empty()) return 1;
  std::uint64_t sum = 0, g = n;
  for (unsigned k : ks) {
    if (k == 0) throw std::invalid_argument("dual moment exponents must be positive");
    sum += k;
    g = std::gcd<std::uint64_t>(g, k);
  }
  if (sum % 2 == 1) return 0;
  const auto r = static_cast<std::int64_t>(ks.size());
  const Rational nr = Rational(static_cast<std::int64_t>(n));
  const Rational scale = r >= 2 ? nr.pow(static_cast<unsigned>(r - 2)) : nr.pow(static_cast<unsigned>(2 - r)).inverse();
  return scale * Rational(static_cast<std::int64_t>(g));
}

Rational closed_form_dual_moments_derived(Index n, const std::vector<unsigned>& ks) {
  if (ks.empty()) return 1;
  if (std::any_of(ks.begin(), ks.end(), [](unsigned k) { return k % 2 == 1; })) return closed_form_dual_moments(n, ks);
  const auto nn = static_cast<std::int64_t>(n);
  std::int64_t half_sum = 0;
  for (unsigned k : ks) half_sum += k / 2;
  std::int64_t count = 0;
  for (std::int64_t t = 0; t < nn; ++t) {
    bool all = divides(nn, t * half_sum);
    for (unsigned k : ks) all = all && divides(nn, static_cast<std::int64_t>(k) * t);
    if (all) ++count;
  }
  return Rational(nn).pow(static_cast<unsigned>(ks.size() - 1)) * Rational(count);
}

AlgElement dual_trace_formula(const QuantumGroup& D, unsigned k) {
  if (D.family() != Family::kDualSekine) throw std::invalid_argument("dual_trace_formula: not a dual Sekine group");
  const Index n = D.param();
  const auto nn = static_cast<std::int64_t>(n);
  const SekineLayout L{n};
  const auto kk = static_cast<std::int64_t>(k);
  Terms t;
  for (std::int64_t s = 0; s < nn; ++s)
    for (std::int64_t tt = 0; tt < nn; ++tt) {
      if (!divides(nn, kk * tt)) continue;
      if (k % 2 == 1) t.emplace_back(L.E(s, s + tt), CycloNum(1));
      else t.emplace_back(L.e(s, tt * (kk / 2)), CycloNum::root_of_unity(n, -s * tt));
    }
  return AlgElement(D.algebra(), sparse::normalize(std::move(t)));
}

// ---------------------------------------------------------------------------
// Character spaces

namespace {

AlgElement rho(const QuantumGroup& G, std::int64_t l, int sign) {
  return sekine_one_dim(G, mod(l, static_cast<std::int64_t>(G.param())), sign, OneDimKind::kRho);
}
AlgElement sigma(const QuantumGroup& G, std::int64_t l, int sign) {
  return sekine_one_dim(G, mod(l, static_cast<std::int64_t>(G.param())), sign, OneDimKind::kSigma);
}

std::string rho_label(std::int64_t l, int sign) { return std::string("rho") + (sign > 0 ? "+" : "-") + "_" + std::to_string(l); }
std::string sigma_label(std::int64_t l, int sign) {
  return std::string("sigma") + (sign > 0 ? "+" : "-") + "_" + std::to_string(l);
}

AlgElement combine(const Algebra& A, const std::vector<CharacterTerm>& terms) {
  AlgElement acc(A);
  for (const auto& t : terms) acc += t.coeff * t.element;
  return acc;
}

}  // namespace

std::string ChebyshevDecomposition::str() const {
  std::ostringstream os;
  os << "chi(X(" << u << "," << v << ")) = rho_" << u << "^(+/-) * (";
  bool first = true;
  for (std::size_t j = poly.size(); j-- > 1;) {
    if (poly[j] == 0) continue;
    os << (first ? "" : " + ") << poly[j] << " x^" << j;
    first = false;
  }
  if (rho_constant != 0) os << (first ? "" : " + ") << rho_constant << " (rho+_0 + rho-_0)";
  os << "), x = chi(X(0,1)); plus:" << (verified_plus ? "ok" : "FAIL") << " minus:" << (verified_minus ? "ok" : "FAIL");
  return os.str();
}

ChebyshevDecomposition chebyshev_decompose(const QuantumGroup& G, std::int64_t u, std::int64_t v) {
  if (G.family() != Family::kSekine) throw std::invalid_argument("chebyshev_decompose: not a Sekine group");
  ChebyshevDecomposition d;
  d.n = G.param();
  d.u = u;
  d.v = v;
  // D_0 = 2, D_1 = x, D_{j+1} = x D_j - D_{j-1}; D_j(x) = 2 T_j(x / 2)
  std::vector<std::int64_t> prev{2}, cur{0, 1};
  if (v == 0) cur = prev;
  for (std::int64_t j = 1; j < v; ++j) {
    std::vector<std::int64_t> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  d.poly = cur;
  d.rho_constant = cur[0] / 2;

  const Algebra& A = G.algebra();
  const AlgElement x = corep_trace(sekine_two_dim(G, 0, 1));
  AlgElement p = (rho(G, 0, 1) + rho(G, 0, -1)) * CycloNum(d.rho_constant);
  AlgElement xp = AlgElement::unit(A);
  for (std::size_t j = 1; j < cur.size(); ++j) {
    xp = xp * x;
    if (cur[j] != 0) p += xp * CycloNum(cur[j]);
  }
  const AlgElement target = corep_trace(sekine_two_dim(G, u, v));
  d.verified_plus = rho(G, u, 1) * p == target;
  d.verified_minus = rho(G, u, -1) * p == target;
  return d;
}

std::string SpaceDecomposition::str() const {
  std::ostringstream os;
  os << "chi(X(" << u << "," << v << ")^" << k << ") =";
  for (std::size_t i = 0; i < terms.size(); ++i) os << (i ? " +" : "") << " (" << terms[i].coeff.str() << ") " << terms[i].label;
  os << "  [" << (verified ? "ok" : "FAIL") << ", printed coefficients " << (verified_printed ? "ok" : "differ") << "]";
  return os.str();
}

SpaceDecomposition propspace_decompose(const QuantumGroup& G, std::int64_t u, std::int64_t v, std::int64_t k) {
  if (G.family() != Family::kSekine) throw std::invalid_argument("propspace_decompose: not a Sekine group");
  const Index n = G.param();
  const auto nn = static_cast<std::int64_t>(n);
  SpaceDecomposition d;
  d.u = u;
  d.v = v;
  d.k = k;
  const std::int64_t U = mod(k * u, nn);
  const std::int64_t r = mod(k * v, nn);
  const bool even = k % 2 == 0;
  const Rational half(1, 2);
  std::vector<CharacterTerm> printed;

  if (r == 0) {
    const std::int64_t a = k * v / nn;
    if (!even) {
      d.terms = {{1, rho_label(U, 1), rho(G, U, 1)}, {1, rho_label(U, -1), rho(G, U, -1)}};
      printed = d.terms;
    } else {
      const int s = (a * u) % 2 == 0 ? 1 : -1;
      const int sp = (a * v) % 2 == 0 ? 1 : -1;
      d.terms = {{2, rho_label(U, s), rho(G, U, s)}};
      printed = {{2, rho_label(U, sp), rho(G, U, sp)}};
    }
  } else {
    const std::int64_t w = std::min(r, nn - r);
    std::vector<CharacterTerm> base;
    if (2 * w != nn) {
      base.push_back({1, "chi(X(" + std::to_string(U) + "," + std::to_string(w) + "))", corep_trace(sekine_two_dim(G, U, w))});
    } else {
      base.push_back({1, sigma_label(U, 1), sigma(G, U, 1)});
      base.push_back({1, sigma_label(U, -1), sigma(G, U, -1)});
    }
    d.terms = base;
    printed = base;
    if (even) {
      CycloNum g = sekine_block_coefficient(n, u, v, k);
      g *= half;
      if (!g.is_zero()) {
        d.terms.push_back({g, rho_label(U, 1), rho(G, U, 1)});
        d.terms.push_back({-g, rho_label(U, -1), rho(G, U, -1)});
      }
      CycloNum gp;
      if (2 * w != nn) {
        gp = sekine_block_coefficient(n, u, v, k, BlockCoefficient::kAsPrinted);
        gp *= half;
      } else if (v % 2 == 0) {
        gp = CycloNum((v / 2) % 2 == 0 ? 1 : -1);
      }
      if (!gp.is_zero()) {
        printed.push_back({gp, rho_label(U, 1), rho(G, U, 1)});
        printed.push_back({-gp, rho_label(U, -1), rho(G, U, -1)});
      }
    }
  }
  const AlgElement target = corep_trace(corep_power(sekine_two_dim(G, u, v, false), static_cast<unsigned>(k)));
  d.verified = combine(G.algebra(), d.terms) == target;
  d.verified_printed = combine(G.algebra(), printed) == target;
  return d;
}

std::vector<std::pair<std::string, std::string>> noncommuting_character_pairs(const QuantumGroup& G) {
  const IrrepCatalog cat = irrep_catalog(G);
  std::vector<AlgElement> chars;
  for (const auto& U : cat.irreps) chars.push_back(corep_trace(U));
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = i + 1; j < chars.size(); ++j)
      if (!chars[i].commutes_with(chars[j])) out.emplace_back(cat.irreps[i].label, cat.irreps[j].label);
  return out;
}

// ---------------------------------------------------------------------------
// Gelfand space

OmegaSpace omega_space(const QuantumGroup& G) {
  if (G.family() != Family::kSekine) throw std::invalid_argument("omega_space: not a Sekine group");
  const Index n = G.param();
  if (n < 3) throw std::invalid_argument("omega_space needs n >= 3");
  const auto nn = static_cast<std::int64_t>(n);
  const SekineLayout L{n};
  const Algebra& A = G.algebra();
  OmegaSpace om;
  om.n = n;

  for (std::int64_t s = 0; s < nn; ++s)
    for (std::int64_t t = 0; 2 * t <= nn; ++t) {
      Terms id{{L.e(s, t), 1}};
      if (t != 0 && 2 * t != nn) id.emplace_back(L.e(s, nn - t), 1);
      om.points.push_back({CycloNum::root_of_unity(n, s), 1,
                           CycloNum::root_of_unity(n, t) + CycloNum::root_of_unity(n, -t), Rational(0),
                           AlgElement(A, sparse::normalize(std::move(id)))});
    }
  const CycloNum inv_n(Rational(1, nn));
  for (std::int64_t s = 0; s < nn; ++s) {
    // spectral projection of the cyclic shift sum_i E_{i,i+1} for eta^s
    Terms id;
    for (std::int64_t j = 0; j < nn; ++j) {
      const CycloNum c = CycloNum::root_of_unity(n, -s * j) * inv_n;
      for (std::int64_t i = 0; i < nn; ++i) id.emplace_back(L.E(i, i + j), c);
    }
    om.points.push_back({-CycloNum::root_of_unity(n, s), -1, CycloNum(0), Rational(0),
                         AlgElement(A, sparse::normalize(std::move(id)))});
  }

  bool ok = true;
  AlgElement total(A);
  for (std::size_t i = 0; i < om.points.size() && ok; ++i) {
    const AlgElement& I = om.points[i].idempotent;
    ok = I * I == I;
    total += I;
    for (std::size_t j = i + 1; j < om.points.size() && ok; ++j) {
      ok = (I * om.points[j].idempotent).is_zero();
      const auto& p = om.points[i];
      const auto& q = om.points[j];
      if (p.a == q.a && p.b == q.b && p.c == q.c) ok = false;
    }
  }
  ok = ok && total == AlgElement::unit(A);
  const AlgElement rp = rho(G, 1, 1), rm = rho(G, 1, -1), x = corep_trace(sekine_two_dim(G, 0, 1));
  AlgElement rp2(A), rm2(A), x2(A);
  for (const auto& p : om.points) {
    rm2 += p.a * p.idempotent;
    rp2 += (p.a * CycloNum(p.b)) * p.idempotent;
    x2 += p.c * p.idempotent;
  }
  ok = ok && rp2 == rp && rm2 == rm && x2 == x;
  om.idempotents_ok = ok;

  Rational mass = 0;
  for (auto& p : om.points) {
    const CycloNum w = G.haar(p.idempotent);
    p.weight = w.to_rational();
    mass += p.weight;
  }
  om.total_mass = mass;
  return om;
}

Rational omega_uniform_weight(Index n) {
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t p = nn / 2;
  return Rational(1, 2 * nn * (nn % 4 == 0 ? p + 1 : p + 2));
}

OmegaCheck omega_reproduce(const QuantumGroup& G, const OmegaSpace& omega, unsigned max_degree) {
  const Index n = G.param();
  const auto nn = static_cast<std::int64_t>(n);
  const Algebra& A = G.algebra();
  const AlgElement rp = rho(G, 1, 1), rm = rho(G, 1, -1), x = corep_trace(sekine_two_dim(G, 0, 1));
  auto powers = [&](const AlgElement& g) {
    std::vector<AlgElement> v{AlgElement::unit(A)};
    for (unsigned i = 1; i <= max_degree; ++i) v.push_back(v.back() * g);
    return v;
  };
  const auto P = powers(rp), M = powers(rm), X = powers(x);

  // printed space: b = 1 points (eta^s, 1, c) with c among the cosine values and 0
  struct UPoint {
    CycloNum a, ab, c;
    Rational w;
  };
  std::vector<UPoint> upts;
  const Rational uw = omega_uniform_weight(n);
  for (std::int64_t s = 0; s < nn; ++s) {
    std::vector<CycloNum> cs;
    for (std::int64_t t = 0; 2 * t <= nn; ++t) cs.push_back(CycloNum::root_of_unity(n, t) + CycloNum::root_of_unity(n, -t));
    if (std::none_of(cs.begin(), cs.end(), [](const CycloNum& c) { return c.is_zero(); })) cs.push_back(CycloNum(0));
    const CycloNum a = CycloNum::root_of_unity(n, s);
    for (auto& c : cs) upts.push_back({a, a, c, uw});
    upts.push_back({-a, a, CycloNum(0), Rational(1, 2 * nn)});
  }

  OmegaCheck chk;
  for (unsigned deg = 0; deg <= max_degree; ++deg)
    for (unsigned p = deg + 1; p-- > 0;)
      for (unsigned m = deg - p + 1; m-- > 0;) {
        const unsigned q = deg - p - m;
        OmegaMonomial mono{p, m, q, {}, {}, {}};
        mono.haar = G.haar(P[p] * M[m] * X[q]);
        for (const auto& pt : omega.points) {
          CycloNum v = (pt.a * CycloNum(pt.b)).pow(p) * pt.a.pow(m) * pt.c.pow(q);
          v *= pt.weight;
          mono.point_sum += v;
        }
        for (const auto& pt : upts) {
          CycloNum v = pt.ab.pow(p) * pt.a.pow(m) * pt.c.pow(q);
          v *= pt.w;
          mono.uniform_sum += v;
        }
        if (!(mono.haar == mono.point_sum)) ++chk.mismatches;
        if (!(mono.haar == mono.uniform_sum)) ++chk.uniform_mismatches;
        chk.monomials.push_back(std::move(mono));
      }
  return chk;
}

std::vector<SpectrumComparison> omega_spectra(const QuantumGroup& G, double tol) {
  const Index n = G.param();
  const auto nn = static_cast<std::int64_t>(n);
  std::vector<std::complex<double>> roots, signed_roots, cosines;
  for (std::int64_t s = 0; s < nn; ++s) {
    const double th = 2.0 * M_PI * static_cast<double>(s) / static_cast<double>(nn);
    roots.emplace_back(std::cos(th), std::sin(th));
    signed_roots.emplace_back(std::cos(th), std::sin(th));
    signed_roots.emplace_back(-std::cos(th), -std::sin(th));
    cosines.emplace_back(2.0 * std::cos(th), 0.0);
  }
  cosines.emplace_back(0.0, 0.0);
  auto compare = [&](std::string name, const AlgElement& a, std::vector<std::complex<double>> expected) {
    SpectrumComparison c;
    c.element = std::move(name);
    for (const auto& [z, mult] : spectrum(a, tol).merged) c.computed.push_back(z);
    c.expected = std::move(expected);
    auto dist = [](const std::vector<std::complex<double>>& from, const std::vector<std::complex<double>>& to) {
      double worst = 0.0;
      for (const auto& z : from) {
        double best = INFINITY;
        for (const auto& w : to) best = std::min(best, std::abs(z - w));
        worst = std::max(worst, best);
      }
      return worst;
    };
    c.worst = std::max(dist(c.computed, c.expected), dist(c.expected, c.computed));
    c.ok = c.worst <= tol;
    return c;
  };
  return {compare("rho+_1", rho(G, 1, 1), roots), compare("rho-_1", rho(G, 1, -1), signed_roots),
          compare("chi(X(0,1))", corep_trace(sekine_two_dim(G, 0, 1)), cosines)};
}

// ---------------------------------------------------------------------------
// Matching

std::string MatchReport::str() const {
  std::ostringstream os;
  std::size_t bad = 0;
  for (const auto& w : words) bad += w.ok ? 0 : 1;
  os << element << " vs " << law << ": " << (matched ? "match" : "MISMATCH") << " (" << words.size() << " words, " << bad
     << " failing, worst deviation " << worst << ")";
  return os.str();
}

MatchReport match_distribution(const MomentTable& table, const RefDist& d, unsigned max_order, double tol) {
  MatchReport r;
  r.element = table.element;
  r.law = d.name;
  r.matched = true;
  for (const auto& e : table.entries) {
    if (e.word.size() > max_order) continue;
    const auto [k, l] = letter_counts(e.word);
    WordMatch m;
    m.word = e.word;
    m.value = e.value;
    m.expected = refdist_moment(d, k, l);
    m.exact = m.value == m.expected;
    m.deviation = std::abs(m.value.embed() - m.expected.embed());
    m.ok = m.exact || (!is_rational_pair(m.value, m.expected) && m.deviation <= tol);
    r.worst = std::max(r.worst, m.exact ? 0.0 : m.deviation);
    r.matched = r.matched && m.ok;
    r.words.push_back(std::move(m));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Pairwise independence

Rational pair_limit_printed(const PairSpec& x, const PairSpec& y) {
  if (x.k * x.u != y.k * y.u || x.star == y.star) return 0;
  const bool both_even = x.k % 2 == 0 && y.k % 2 == 0;
  return Rational((x.k * x.v == y.k * y.v ? 1 : 0) + (both_even ? 2 : 0));
}

bool pair_independent_printed(const PairSpec& x, const PairSpec& y) {
  if (x.k * x.u != y.k * y.u) return true;
  if (x.star == y.star) return true;
  return (x.k % 2 == 1 || y.k % 2 == 1) && x.k * x.v != y.k * y.v;
}

namespace {

std::int64_t sgn(const PairSpec& p) { return p.star ? -1 : 1; }

}  // namespace

CycloNum pair_cumulant_formula(Index n, const PairSpec& x, const PairSpec& y) {
  const auto nn = static_cast<std::int64_t>(n);
  const bool cond = divides(nn, sgn(x) * x.k * x.u + sgn(y) * y.k * y.u);
  const std::int64_t bx = x.k * x.v, by = y.k * y.v;
  const bool both_even = x.k % 2 == 0 && y.k % 2 == 0;
  CycloNum joint(cond ? (divides(nn, bx - by) ? 1 : 0) + (divides(nn, bx + by) ? 1 : 0) : 0);
  if (both_even && cond) {
    CycloNum c = sekine_block_coefficient(n, x.u, x.v, x.k) * sekine_block_coefficient(n, y.u, y.v, y.k);
    c *= Rational(1, 2);
    joint += c;
  }
  auto mean = [&](const PairSpec& p) {
    if (!divides(nn, p.k * p.u)) return CycloNum(0);
    CycloNum m(divides(nn, p.k * p.v) ? 1 : 0);
    if (p.k % 2 == 0) {
      CycloNum c = sekine_block_coefficient(n, p.u, p.v, p.k);
      c *= Rational(1, 2);
      m += c;
    }
    return m;
  };
  return joint - mean(x) * mean(y);
}

Rational pair_limit_derived(const PairSpec& x, const PairSpec& y) {
  const bool cond = x.star != y.star ? x.k * x.u == y.k * y.u : (x.u == 0 && y.u == 0);
  const bool both_even = x.k % 2 == 0 && y.k % 2 == 0;
  std::int64_t v = 0;
  if (cond && x.k * x.v == y.k * y.v) v += 1;
  if (both_even && cond) v += 2;
  if (both_even && x.u == 0 && y.u == 0) v -= 1;
  return Rational(v);
}

std::string IndependenceReport::str() const {
  auto f = [](const PairSpec& p) {
    return "chi(X(" + std::to_string(p.u) + "," + std::to_string(p.v) + ")^" + std::to_string(p.k) + ")" +
           (p.star ? "*" : "");
  };
  std::ostringstream os;
  os << "n=" << n << " " << f(x) << ", " << f(y) << ": cumulant " << cumulant.str() << " (~" << cumulant.embed().real()
     << "), printed limit " << limit_printed.str() << ", derived limit " << limit_derived.str() << ", printed verdict "
     << (printed_independent ? "independent" : "not independent");
  return os.str();
}

IndependenceReport pairwise_independence(const QuantumGroup& G, const PairSpec& x, const PairSpec& y) {
  if (G.family() != Family::kSekine) throw std::invalid_argument("pairwise_independence: not a Sekine group");
  IndependenceReport r;
  r.x = x;
  r.y = y;
  r.n = G.param();
  auto build = [&](const PairSpec& p) {
    AlgElement e = corep_trace(corep_power(sekine_two_dim(G, p.u, p.v), static_cast<unsigned>(p.k)));
    return p.star ? e.star() : e;
  };
  const AlgElement ex = build(x), ey = build(y);
  if (!ex.commutes_with(ey)) throw CommutationError(0, 1);
  r.cumulant = haar_product(G, ex, ey) - G.haar(ex) * G.haar(ey);
  r.cumulant_formula = pair_cumulant_formula(r.n, x, y);
  r.limit_printed = pair_limit_printed(x, y);
  r.limit_derived = pair_limit_derived(x, y);
  r.printed_independent = pair_independent_printed(x, y);
  return r;
}

// ---------------------------------------------------------------------------
// Families and scans

std::string FamilySpec::str() const {
  if (kind == Kind::kDualNormalized) return "dual-normalized:" + std::to_string(k);
  return "sekine-char:" + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(k);
}

FamilySpec FamilySpec::parse(const std::string& s) {
  FamilySpec f;
  auto ints = [&](const std::string& body) {
    std::vector<std::int64_t> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t pos = 0;
      const long long v = std::stoll(item, &pos);
      if (pos != item.size()) throw std::invalid_argument("bad integer in family: " + s);
      out.push_back(v);
    }
    return out;
  };
  try {
    if (s.rfind("sekine-char:", 0) == 0) {
      const auto v = ints(s.substr(12));
      if (v.size() != 3 || v[1] < 1 || v[2] < 1 || v[0] < 0) throw std::invalid_argument("");
      f.kind = Kind::kSekineChar;
      f.u = v[0];
      f.v = v[1];
      f.k = v[2];
      return f;
    }
    if (s.rfind("dual-normalized:", 0) == 0) {
      const auto v = ints(s.substr(16));
      if (v.size() != 1 || v[0] < 1) throw std::invalid_argument("");
      f.kind = Kind::kDualNormalized;
      f.k = v[0];
      return f;
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("bad family descriptor: " + s + " (expected sekine-char:u,v,k or dual-normalized:k)");
}

QuantumGroup family_group(const FamilySpec& f, Index n) {
  if (f.kind == FamilySpec::Kind::kDualNormalized) return dual(build_sekine(n));
  return build_sekine(n);
}

AlgElement family_element(const QuantumGroup& G, const FamilySpec& f) {
  if (f.kind == FamilySpec::Kind::kDualNormalized) {
    AlgElement e = corep_trace(corep_power(dual_fundamental(G), static_cast<unsigned>(f.k)));
    return e * CycloNum(Rational(1, static_cast<std::int64_t>(G.param())));
  }
  return corep_trace(corep_power(sekine_two_dim(G, f.u, f.v, false), static_cast<unsigned>(f.k)));
}

std::string ScanReport::csv() const {
  std::ostringstream os;
  os << "n,word,value,limit,deviation\n";
  for (const auto& r : rows)
    os << r.n << "," << word_str(r.word) << ",\"" << r.value.str() << "\",\"" << r.limit.str() << "\"," << r.deviation
       << "\n";
  return os.str();
}

ScanReport asymptotic_scan(const FamilySpec& f, const RefDist& d, unsigned max_order, const std::vector<Index>& ns) {
  ScanReport rep;
  rep.family = f;
  rep.law = d.name;
  std::vector<MomentWord> words;
  std::map<MomentWord, std::vector<std::pair<Index, bool>>> exact;
  for (Index n : ns) {
    const QuantumGroup G = family_group(f, n);
    const AlgElement a = family_element(G, f);
    const MomentTable t = star_moments(G, a, max_order, f.str());
    for (const auto& e : t.entries) {
      const auto [k, l] = letter_counts(e.word);
      ScanRow row;
      row.n = n;
      row.word = e.word;
      row.value = e.value;
      row.limit = refdist_moment(d, k, l);
      row.deviation = std::abs(row.value.embed() - row.limit.embed());
      if (!exact.count(e.word)) words.push_back(e.word);
      exact[e.word].emplace_back(n, row.value == row.limit);
      rep.rows.push_back(std::move(row));
    }
  }
  for (const auto& w : words) {
    std::optional<Index> first;
    for (const auto& [n, ok] : exact[w]) {
      if (ok && !first) first = n;
      if (!ok) first.reset();
    }
    rep.first_exact.emplace_back(w, first);
  }
  return rep;
}

}  // namespace fqg
