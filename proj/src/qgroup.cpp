#include "fqg/qgroup.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fqg/parallel.hpp"

namespace fqg {

// ---------------------------------------------------------------------------
// QuantumGroup

struct QuantumGroup::Cache {
  std::mutex mutex;
  std::vector<std::unique_ptr<Terms>> delta;
  std::once_flag square_once;
  std::optional<Algebra> square;
};

QuantumGroup::QuantumGroup(std::string name, Family family, Index param, Algebra A, DeltaFn delta,
                           std::vector<CycloNum> counit, std::vector<Terms> antipode, std::vector<CycloNum> haar)
    : name_(std::move(name)),
      family_(family),
      param_(param),
      A_(std::move(A)),
      delta_fn_(std::move(delta)),
      counit_(std::move(counit)),
      antipode_(std::move(antipode)),
      haar_(std::move(haar)),
      cache_(std::make_shared<Cache>()) {
  const std::size_t d = A_.dim();
  if (counit_.size() != d || antipode_.size() != d || haar_.size() != d)
    throw std::invalid_argument("structure maps must have one entry per basis element");
  cache_->delta.resize(d);
}

const Algebra& QuantumGroup::tensor_square() const {
  std::call_once(cache_->square_once, [this] { cache_->square = Algebra::tensor(A_, A_); });
  return *cache_->square;
}

const Terms& QuantumGroup::delta_basis(Index i) const {
  if (i >= dim()) throw std::out_of_range("basis index out of range");
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (cache_->delta[i]) return *cache_->delta[i];
  }
  auto col = std::make_unique<Terms>(sparse::normalize(delta_fn_(i)));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (!cache_->delta[i]) cache_->delta[i] = std::move(col);
  return *cache_->delta[i];
}

AlgElement QuantumGroup::delta(const AlgElement& a) const {
  if (!(a.algebra() == A_)) throw std::invalid_argument("algebra mismatch");
  const std::size_t d = dim();
  Accumulator acc(d * d);
  for (const auto& [i, c] : a.terms()) acc.add_terms(delta_basis(i), c);
  return AlgElement(tensor_square(), acc.take());
}

CycloNum QuantumGroup::counit(const AlgElement& a) const { return sparse::dot_dense(a.terms(), counit_); }

AlgElement QuantumGroup::antipode(const AlgElement& a) const {
  Accumulator acc(dim());
  for (const auto& [i, c] : a.terms()) acc.add_terms(antipode_[i], c);
  return AlgElement(A_, acc.take());
}

CycloNum QuantumGroup::haar(const AlgElement& a) const {
  if (!(a.algebra() == A_)) throw std::invalid_argument("algebra mismatch");
  return sparse::dot_dense(a.terms(), haar_);
}

QuantumGroup QuantumGroup::with_delta_column(Index i, Terms column) const {
  auto base = delta_fn_;
  auto replaced = std::make_shared<Terms>(std::move(column));
  DeltaFn fn = [base, i, replaced](Index k) { return k == i ? *replaced : base(k); };
  return QuantumGroup(name_ + " (mutated)", Family::kGeneric, param_, A_, fn, counit_, antipode_, haar_);
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

struct KpEntry {
  Index k, i, j;
  int num, den, ipow;  // coefficient num/den * i^ipow
};

// Basis order: e1 e2 e3 e4 E11 E12 E21 E22.
constexpr Index e1 = 0, e2 = 1, e3 = 2, e4 = 3, E11 = 4, E12 = 5, E21 = 6, E22 = 7;

const std::vector<KpEntry>& kp_coproduct() {
  static const std::vector<KpEntry> table = {
      {e1, e1, e1, 1, 1, 0},   {e1, e2, e2, 1, 1, 0},   {e1, e3, e3, 1, 1, 0},   {e1, e4, e4, 1, 1, 0},
      {e1, E11, E11, 1, 2, 0}, {e1, E12, E12, 1, 2, 0}, {e1, E21, E21, 1, 2, 0}, {e1, E22, E22, 1, 2, 0},

      {e2, e1, e2, 1, 1, 0},   {e2, e2, e1, 1, 1, 0},   {e2, e3, e4, 1, 1, 0},   {e2, e4, e3, 1, 1, 0},
      {e2, E11, E22, 1, 2, 0}, {e2, E22, E11, 1, 2, 0}, {e2, E12, E21, -1, 2, 1}, {e2, E21, E12, 1, 2, 1},

      {e3, e1, e3, 1, 1, 0},   {e3, e3, e1, 1, 1, 0},   {e3, e2, e4, 1, 1, 0},   {e3, e4, e2, 1, 1, 0},
      {e3, E11, E22, 1, 2, 0}, {e3, E22, E11, 1, 2, 0}, {e3, E12, E21, 1, 2, 1},  {e3, E21, E12, -1, 2, 1},

      {e4, e1, e4, 1, 1, 0},   {e4, e4, e1, 1, 1, 0},   {e4, e2, e3, 1, 1, 0},    {e4, e3, e2, 1, 1, 0},
      {e4, E11, E11, 1, 2, 0}, {e4, E22, E22, 1, 2, 0}, {e4, E12, E12, -1, 2, 0}, {e4, E21, E21, -1, 2, 0},

      {E11, e1, E11, 1, 1, 0}, {E11, E11, e1, 1, 1, 0}, {E11, e2, E22, 1, 1, 0}, {E11, E22, e2, 1, 1, 0},
      {E11, e3, E22, 1, 1, 0}, {E11, E22, e3, 1, 1, 0}, {E11, e4, E11, 1, 1, 0}, {E11, E11, e4, 1, 1, 0},

      {E12, e1, E12, 1, 1, 0},  {E12, E12, e1, 1, 1, 0},  {E12, e2, E21, 1, 1, 1},  {E12, E21, e2, -1, 1, 1},
      {E12, e3, E21, -1, 1, 1}, {E12, E21, e3, 1, 1, 1},  {E12, e4, E12, -1, 1, 0}, {E12, E12, e4, -1, 1, 0},

      {E21, e1, E21, 1, 1, 0},  {E21, E21, e1, 1, 1, 0},  {E21, e2, E12, -1, 1, 1}, {E21, E12, e2, 1, 1, 1},
      {E21, e3, E12, 1, 1, 1},  {E21, E12, e3, -1, 1, 1}, {E21, e4, E21, -1, 1, 0}, {E21, E21, e4, -1, 1, 0},

      {E22, e1, E22, 1, 1, 0}, {E22, E22, e1, 1, 1, 0}, {E22, e2, E11, 1, 1, 0}, {E22, E11, e2, 1, 1, 0},
      {E22, e3, E11, 1, 1, 0}, {E22, E11, e3, 1, 1, 0}, {E22, e4, E22, 1, 1, 0}, {E22, E22, e4, 1, 1, 0},
  };
  return table;
}

std::vector<CycloNum> zeros(std::size_t d) { return std::vector<CycloNum>(d); }

}  // namespace

QuantumGroup build_kp() {
  const Algebra A = Algebra::multimatrix({1, 1, 1, 1, 2}, 8, {"e1", "e2", "e3", "e4", "E11", "E12", "E21", "E22"});
  const CycloNum imag = CycloNum::root_of_unity(8, 2);
  std::vector<Terms> delta(8);
  for (const auto& t : kp_coproduct()) {
    CycloNum c(Rational(t.num, t.den));
    if (t.ipow == 1) c = c * imag;
    delta[t.k].emplace_back(t.i * 8 + t.j, c);
  }
  auto cols = std::make_shared<std::vector<Terms>>(std::move(delta));
  auto fn = [cols](Index k) { return (*cols)[k]; };

  auto counit = zeros(8);
  counit[e1] = CycloNum(1);
  std::vector<Terms> antipode = {{{e1, 1}}, {{e2, 1}}, {{e3, 1}}, {{e4, 1}},
                                 {{E11, 1}}, {{E21, 1}}, {{E12, 1}}, {{E22, 1}}};
  auto haar = zeros(8);
  for (Index i : {e1, e2, e3, e4}) haar[i] = CycloNum(Rational(1, 8));
  haar[E11] = haar[E22] = CycloNum(Rational(1, 4));
  return QuantumGroup("kp", Family::kKacPaljutkin, 0, A, fn, std::move(counit), std::move(antipode), std::move(haar));
}

std::string sekine_label(const SekineLayout& L, Index idx) {
  const Index n = L.n;
  if (idx < n * n) return "e(" + std::to_string(idx / n) + "," + std::to_string(idx % n) + ")";
  const Index r = idx - n * n;
  auto one_based = [n](Index x) { return x == 0 ? n : x; };
  return "E(" + std::to_string(one_based(r / n)) + "," + std::to_string(one_based(r % n)) + ")";
}

QuantumGroup build_sekine(Index n) {
  if (n < 2) throw std::invalid_argument("Sekine group needs n >= 2");
  const SekineLayout L{n};
  const std::uint32_t m = 2 * n;
  std::vector<Index> blocks(static_cast<std::size_t>(n) * n, 1);
  blocks.push_back(n);
  std::vector<std::string> labels;
  labels.reserve(L.dim());
  for (Index i = 0; i < L.dim(); ++i) labels.push_back(sekine_label(L, i));
  const Algebra A = Algebra::multimatrix(blocks, m, std::move(labels));
  const std::int64_t d = L.dim();
  const auto nn = static_cast<std::int64_t>(n);

  // eta = zeta_{2n}^2
  auto eta = [m](std::int64_t e) { return CycloNum::root_of_unity(m, 2 * e); };
  const CycloNum inv_n(Rational(1, nn));

  auto fn = [L, d, nn, eta, inv_n](Index idx) {
    Terms out;
    const std::int64_t n2 = nn * nn;
    if (idx < n2) {
      const std::int64_t i = idx / nn, j = idx % nn;
      out.reserve(static_cast<std::size_t>(2 * n2));
      for (std::int64_t k = 0; k < nn; ++k)
        for (std::int64_t l = 0; l < nn; ++l) out.emplace_back(L.e(k, l) * d + L.e(i - k, j - l), CycloNum(1));
      for (std::int64_t k = 0; k < nn; ++k)
        for (std::int64_t l = 0; l < nn; ++l)
          out.emplace_back(L.E(k, l) * d + L.E(k + j, l + j), inv_n * eta(i * (k - l)));
    } else {
      const std::int64_t i = (idx - n2) / nn, j = (idx - n2) % nn;
      out.reserve(static_cast<std::size_t>(2 * n2));
      for (std::int64_t k = 0; k < nn; ++k)
        for (std::int64_t l = 0; l < nn; ++l)
          out.emplace_back(L.e(-k, -l) * d + L.E(i - l, j - l), eta(k * (i - j)));
      for (std::int64_t k = 0; k < nn; ++k)
        for (std::int64_t l = 0; l < nn; ++l)
          out.emplace_back(L.E(i - l, j - l) * d + L.e(k, l), eta(k * (j - i)));
    }
    return out;
  };

  auto counit = zeros(L.dim());
  counit[L.e(0, 0)] = CycloNum(1);
  std::vector<Terms> antipode(L.dim());
  auto haar = zeros(L.dim());
  const CycloNum he(Rational(1, 2 * nn * nn));
  const CycloNum hE(Rational(1, 2 * nn));
  for (std::int64_t i = 0; i < nn; ++i)
    for (std::int64_t j = 0; j < nn; ++j) {
      antipode[L.e(i, j)] = {{L.e(-i, -j), CycloNum(1)}};
      antipode[L.E(i, j)] = {{L.E(j, i), CycloNum(1)}};
      haar[L.e(i, j)] = he;
    }
  for (std::int64_t i = 0; i < nn; ++i) haar[L.E(i, i)] = hE;
  return QuantumGroup("sekine:" + std::to_string(n), Family::kSekine, n, A, fn, std::move(counit),
                      std::move(antipode), std::move(haar));
}

// ---------------------------------------------------------------------------
// Integrals and duality

namespace {

// Solves for x with sum_j x_j v_j(row) = 0, where rows are produced sparsely.
std::vector<std::vector<CycloNum>> solve_sparse_rows(std::size_t width, const std::vector<Terms>& rows) {
  RowReducer red(width);
  for (const auto& r : rows) {
    if (r.empty()) continue;
    std::vector<CycloNum> dense(width);
    for (const auto& [i, c] : r) dense[i] = c;
    red.add_row(std::move(dense));
    if (red.rank() == width) break;
  }
  return red.nullspace();
}

std::string dual_label(const std::string& label) {
  if (label.size() > 1 && (label[0] == 'e' || label[0] == 'E') && label[1] == '(')
    return std::string(1, label[0]) + "^" + label.substr(1);
  return "^" + label;
}

}  // namespace

AlgElement normalized_integral(const QuantumGroup& G) {
  const Algebra& A = G.algebra();
  const std::size_t d = A.dim();
  // rows: for each i and output coordinate k, sum_j x_j ([b_i b_j]_k - eps_i delta_jk)
  // together with the right-sided analogue.
  std::vector<Terms> rows;
  for (int side = 0; side < 2; ++side) {
    for (Index i = 0; i < d; ++i) {
      std::vector<Terms> by_k(d);
      for (Index j = 0; j < d; ++j) {
        const Terms p = side == 0 ? A.structure().product_terms(i, j) : A.structure().product_terms(j, i);
        for (const auto& [k, c] : p) by_k[k].emplace_back(j, c);
      }
      const CycloNum& eps = G.counit_weights()[i];
      if (!eps.is_zero())
        for (Index k = 0; k < d; ++k) by_k[k].emplace_back(k, -eps);
      for (auto& r : by_k) rows.push_back(sparse::normalize(std::move(r)));
    }
  }
  const auto null = solve_sparse_rows(d, rows);
  if (null.size() != 1) throw std::runtime_error("integral space is not one-dimensional");
  Terms x;
  for (Index j = 0; j < d; ++j)
    if (!null[0][j].is_zero()) x.emplace_back(j, null[0][j]);
  AlgElement L(A, x);
  const CycloNum e = G.counit(L);
  if (e.is_zero()) throw std::runtime_error("integral has zero counit");
  return L * e.inverse();
}

QuantumGroup dual(const QuantumGroup& G) {
  if (!verify_hopf(G).passed()) throw std::invalid_argument("dual: input fails the Hopf axioms");
  const Algebra& A = G.algebra();
  const auto d = static_cast<Index>(A.dim());

  std::vector<Algebra::Constant> constants;
  for (Index k = 0; k < d; ++k)
    for (const auto& [t, c] : G.delta_basis(k)) constants.push_back({t / d, t % d, k, c});

  Terms unit;
  for (Index k = 0; k < d; ++k)
    if (!G.counit_weights()[k].is_zero()) unit.emplace_back(k, G.counit_weights()[k]);

  // phi_k^*(b_i) = conj(phi_k(S(b_i)^*))
  std::vector<Terms> star(d);
  std::vector<Terms> antipode(d);
  for (Index i = 0; i < d; ++i) {
    const AlgElement s = AlgElement(A, G.antipode_columns()[i]);
    const AlgElement ss = s.star();
    for (const auto& [k, c] : ss.terms()) star[k].emplace_back(i, c.conj());
    for (const auto& [k, c] : s.terms()) antipode[k].emplace_back(i, c);
  }

  std::vector<std::string> labels;
  labels.reserve(d);
  for (Index i = 0; i < d; ++i) labels.push_back(dual_label(A.label(i)));
  const Algebra D = Algebra::from_constants(d, std::move(labels), A.conductor(), constants, unit, star);

  auto cols = std::make_shared<std::vector<Terms>>(d);
  A.structure().for_each_constant([&](Index i, Index j, Index k, const CycloNum& c) {
    (*cols)[k].emplace_back(i * d + j, c);
  });
  auto fn = [cols](Index k) { return (*cols)[k]; };

  std::vector<CycloNum> counit(d);
  for (const auto& [k, c] : A.unit()) counit[k] = c;

  const AlgElement L = normalized_integral(G);
  std::vector<CycloNum> haar(d);
  for (const auto& [k, c] : L.terms()) haar[k] = c;

  Family fam = Family::kGeneric;
  std::string name = "dual(" + G.name() + ")";
  if (G.family() == Family::kSekine) {
    fam = Family::kDualSekine;
    name = "dual-sekine:" + std::to_string(G.param());
  }
  return QuantumGroup(name, fam, G.param(), D, fn, std::move(counit), std::move(antipode), std::move(haar));
}

// ---------------------------------------------------------------------------
// Reports

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || c.skipped; });
}

void Report::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, false, std::move(detail)});
}

void Report::skip(std::string name, std::string reason) {
  checks.push_back({std::move(name), false, true, std::move(reason)});
}

std::string Report::str() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.skipped ? "[SKIP] " : c.passed ? "[PASS] " : "[FAIL] ") << subject << ": " << c.name;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Verifiers

namespace {

std::string first_failure(const std::vector<char>& ok, const Algebra& A) {
  for (std::size_t i = 0; i < ok.size(); ++i)
    if (!ok[i]) return "fails at " + A.label(static_cast<Index>(i));
  return {};
}

Terms apply_delta_terms(const QuantumGroup& G, const Terms& x) {
  const std::size_t d = G.dim();
  Accumulator acc(d * d);
  for (const auto& [i, c] : x) acc.add_terms(G.delta_basis(i), c);
  return acc.take();
}

}  // namespace

Report verify_hopf(const QuantumGroup& G, const VerifyOptions& opt) {
  Report rep;
  rep.subject = G.name();
  const Algebra& A = G.algebra();
  const auto d = static_cast<Index>(A.dim());
  const Algebra& AA = G.tensor_square();
  const std::uint64_t d2 = static_cast<std::uint64_t>(d) * d;
  if (d2 * d > 0xFFFFFFFFULL) throw std::overflow_error("dimension too large for triple tensor indexing");
  for (Index k = 0; k < d; ++k) G.delta_basis(k);  // fill cache before fanning out

  std::vector<char> coassoc(d), counit_ok(d), antipode_ok(d), star_ok(d);
  parallel_for(d, [&](std::size_t kk) {
    const auto k = static_cast<Index>(kk);
    const Terms& dk = G.delta_basis(k);

    Accumulator left(d2 * d), right(d2 * d);
    for (const auto& [t, c] : dk) {
      const Index i = t / d, j = t % d;
      for (const auto& [s, c2] : G.delta_basis(i)) left.add(s * d + j, c * c2);
      for (const auto& [s, c2] : G.delta_basis(j)) right.add(i * static_cast<Index>(d2) + s, c * c2);
    }
    coassoc[k] = left.take() == right.take();

    Accumulator el(d), er(d);
    for (const auto& [t, c] : dk) {
      const Index i = t / d, j = t % d;
      el.add(j, c * G.counit_weights()[i]);
      er.add(i, c * G.counit_weights()[j]);
    }
    const Terms bk = {{k, CycloNum(1)}};
    counit_ok[k] = el.take() == bk && er.take() == bk;

    AlgElement sl(A), sr(A);
    for (const auto& [t, c] : dk) {
      const Index i = t / d, j = t % d;
      sl += AlgElement(A, G.antipode_columns()[i]) * AlgElement::basis(A, j, c);
      sr += AlgElement::basis(A, i, c) * AlgElement(A, G.antipode_columns()[j]);
    }
    const AlgElement expect = AlgElement::scalar(A, G.counit_weights()[k]);
    antipode_ok[k] = sl == expect && sr == expect;

    const AlgElement b = AlgElement::basis(A, k);
    star_ok[k] = G.delta(b.star()) == AlgElement(AA, dk).star();
  });
  auto all = [](const std::vector<char>& v) { return std::all_of(v.begin(), v.end(), [](char c) { return c != 0; }); };
  rep.add("coassociativity", all(coassoc), first_failure(coassoc, A));
  rep.add("counit", all(counit_ok), first_failure(counit_ok, A));
  rep.add("antipode", all(antipode_ok), first_failure(antipode_ok, A));

  const AlgElement one = AlgElement::unit(A);
  rep.add("unital", G.delta(one) == elem_tensor(one, one, AA));

  std::vector<std::pair<Index, Index>> pairs;
  std::string mode;
  if (d <= opt.exhaustive_dim) {
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) pairs.emplace_back(i, j);
    mode = "all " + std::to_string(pairs.size()) + " basis pairs";
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<Index> pick(0, d - 1);
    for (std::size_t r = 0; r < opt.random_pairs; ++r) pairs.emplace_back(pick(rng), pick(rng));
    for (Index i = 0; i < d; ++i) pairs.emplace_back(i, i);
    mode = std::to_string(opt.random_pairs) + " random pairs + " + std::to_string(d) + " diagonal pairs";
  }
  std::vector<char> mult_ok(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const AlgElement bi = AlgElement::basis(A, i), bj = AlgElement::basis(A, j);
    mult_ok[p] = G.delta(bi * bj) == AlgElement(AA, G.delta_basis(i)) * AlgElement(AA, G.delta_basis(j));
  });
  std::string mult_detail = mode;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (!mult_ok[p]) {
      mult_detail += "; fails at (" + A.label(pairs[p].first) + ", " + A.label(pairs[p].second) + ")";
      break;
    }
  rep.add("multiplicative", all(mult_ok), mult_detail);
  rep.add("star-compatible", all(star_ok), first_failure(star_ok, A));
  return rep;
}

Report verify_haar(const QuantumGroup& G, double tol) {
  Report rep;
  rep.subject = G.name();
  const Algebra& A = G.algebra();
  const auto d = static_cast<Index>(A.dim());
  std::vector<char> left(d), right(d);
  for (Index k = 0; k < d; ++k) G.delta_basis(k);
  parallel_for(d, [&](std::size_t kk) {
    const auto k = static_cast<Index>(kk);
    Accumulator l(d), r(d);
    for (const auto& [t, c] : G.delta_basis(k)) {
      const Index i = t / d, j = t % d;
      l.add(j, c * G.haar_weights()[i]);
      r.add(i, c * G.haar_weights()[j]);
    }
    const Terms expect = sparse::scale(A.unit(), G.haar_weights()[k]);
    left[k] = l.take() == expect;
    right[k] = r.take() == expect;
  });
  auto all = [](const std::vector<char>& v) { return std::all_of(v.begin(), v.end(), [](char c) { return c != 0; }); };
  rep.add("left invariance", all(left), first_failure(left, A));
  rep.add("right invariance", all(right), first_failure(right, A));
  rep.add("normalized", G.haar(AlgElement::unit(A)) == CycloNum(1));

  // Gram matrix [h(b_i^* b_j)]
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(d, d);
  std::vector<AlgElement> stars;
  stars.reserve(d);
  for (Index i = 0; i < d; ++i) stars.push_back(AlgElement::basis(A, i).star());
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const AlgElement p = stars[i] * AlgElement::basis(A, j);
      if (!p.is_zero()) gram(i, j) = G.haar(p).embed();
    }
  const Eigen::MatrixXcd herm = (gram + gram.adjoint()) / 2.0;
  const double asym = (gram - herm).norm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues().minCoeff();
  std::ostringstream os;
  os << "min eigenvalue " << min_ev;
  rep.add("positive", min_ev >= -tol && asym <= tol, os.str());
  return rep;
}

namespace {

std::vector<Terms> cancellation_vectors(const QuantumGroup& G, bool left) {
  const Algebra& A = G.algebra();
  const auto d = static_cast<Index>(A.dim());
  const Algebra& AA = G.tensor_square();
  const AlgElement one = AlgElement::unit(A);
  std::vector<Terms> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (Index i = 0; i < d; ++i) {
    const AlgElement b = AlgElement::basis(A, i);
    const AlgElement f = left ? elem_tensor(one, b, AA) : elem_tensor(b, one, AA);
    for (Index j = 0; j < d; ++j) out.push_back((f * AlgElement(AA, G.delta_basis(j))).terms());
  }
  return out;
}

}  // namespace

Report verify_cancellation(const QuantumGroup& G, double tol, std::size_t max_dim) {
  Report rep;
  rep.subject = G.name();
  const std::size_t d = G.dim();
  if (d > max_dim) {
    rep.skip("cancellation (1 (x) A) Delta(A)", "dimension " + std::to_string(d) + " above bound " + std::to_string(max_dim));
    rep.skip("cancellation (A (x) 1) Delta(A)", "dimension " + std::to_string(d) + " above bound " + std::to_string(max_dim));
    return rep;
  }
  for (bool left : {true, false}) {
    const std::size_t r = rank_float(cancellation_vectors(G, left), d * d, tol);
    rep.add(left ? "cancellation (1 (x) A) Delta(A)" : "cancellation (A (x) 1) Delta(A)", r == d * d,
            "rank " + std::to_string(r) + " of " + std::to_string(d * d));
  }
  return rep;
}

std::size_t cancellation_rank_exact(const QuantumGroup& G, bool left) {
  const std::size_t w = G.dim() * G.dim();
  RowReducer red(w);
  for (const auto& v : cancellation_vectors(G, left)) {
    std::vector<CycloNum> dense(w);
    for (const auto& [i, c] : v) dense[i] = c;
    red.add_row(std::move(dense));
  }
  return red.rank();
}

bool verify_cocommutative(const QuantumGroup& G) {
  const auto d = static_cast<Index>(G.dim());
  for (Index k = 0; k < d; ++k) {
    const Terms& dk = G.delta_basis(k);
    Terms flipped;
    flipped.reserve(dk.size());
    for (const auto& [t, c] : dk) flipped.emplace_back((t % d) * d + t / d, c);
    if (sparse::normalize(std::move(flipped)) != dk) return false;
  }
  return true;
}

HaarUniqueness haar_uniqueness(const QuantumGroup& G) {
  const auto d = static_cast<Index>(G.dim());
  const Terms& unit = G.algebra().unit();
  std::vector<Terms> rows;
  for (Index k = 0; k < d; ++k) {
    std::vector<Terms> by_j(d);
    for (const auto& [t, c] : G.delta_basis(k)) by_j[t % d].emplace_back(t / d, c);
    for (const auto& [j, u] : unit) by_j[j].emplace_back(k, -u);
    for (auto& r : by_j) rows.push_back(sparse::normalize(std::move(r)));
  }
  const auto null = solve_sparse_rows(d, rows);
  HaarUniqueness out;
  out.solution_dim = null.size();
  if (null.size() == 1) {
    CycloNum total;
    for (const auto& [j, u] : unit) total += null[0][j] * u;
    if (!total.is_zero()) {
      const CycloNum inv = total.inverse();
      out.equals_haar = true;
      for (Index i = 0; i < d; ++i)
        if (!(null[0][i] * inv == G.haar_weights()[i])) out.equals_haar = false;
    }
  }
  return out;
}

}  // namespace fqg
