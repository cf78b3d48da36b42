#include "fqg/coreps.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace fqg {

Corep make_grid(std::string label, std::size_t d, std::vector<AlgElement> entries) {
  if (d == 0 || entries.size() != d * d) throw std::invalid_argument("grid must have d*d entries");
  for (const auto& e : entries)
    if (!(e.algebra() == entries.front().algebra())) throw std::invalid_argument("grid entries from different algebras");
  return Corep{std::move(label), d, std::move(entries)};
}

Corep identity_grid(const Algebra& A, std::size_t d) {
  std::vector<AlgElement> entries;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) entries.push_back(i == j ? AlgElement::unit(A) : AlgElement(A));
  return make_grid("1", d, std::move(entries));
}

Corep grid_multiply(const Corep& U, const Corep& V) {
  if (U.d != V.d) throw std::invalid_argument("grid size mismatch");
  const std::size_t d = U.d;
  std::vector<AlgElement> entries;
  entries.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      AlgElement acc(U.algebra());
      for (std::size_t k = 0; k < d; ++k) {
        if (U(i, k).is_zero() || V(k, j).is_zero()) continue;
        acc += U(i, k) * V(k, j);
      }
      entries.push_back(std::move(acc));
    }
  return make_grid(U.label + "*" + V.label, d, std::move(entries));
}

Corep conjugate(const Corep& U) {
  std::vector<AlgElement> entries;
  for (const auto& e : U.entries) entries.push_back(e.star());
  return make_grid("conj(" + U.label + ")", U.d, std::move(entries));
}

Corep direct_sum(const Corep& U, const Corep& V) {
  const std::size_t d = U.d + V.d;
  const Algebra& A = U.algebra();
  std::vector<AlgElement> entries(d * d, AlgElement(A));
  for (std::size_t i = 0; i < U.d; ++i)
    for (std::size_t j = 0; j < U.d; ++j) entries[i * d + j] = U(i, j);
  for (std::size_t i = 0; i < V.d; ++i)
    for (std::size_t j = 0; j < V.d; ++j) entries[(U.d + i) * d + U.d + j] = V(i, j);
  return make_grid(U.label + "+" + V.label, d, std::move(entries));
}

std::string CorepReport::str() const {
  std::ostringstream os;
  os << "corep_identity=" << corep_identity << " counit_identity=" << counit_identity << " unitary=" << unitary
     << " invertible=" << invertible;
  return os.str();
}

bool is_unitary(const Corep& U) {
  const std::size_t d = U.d;
  const Algebra& A = U.algebra();
  const Corep S = conjugate(U);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      AlgElement a(A), b(A);
      for (std::size_t k = 0; k < d; ++k) {
        a += U(i, k) * S(j, k);  // U U^*
        b += S(k, i) * U(k, j);  // U^* U
      }
      const AlgElement expect = i == j ? AlgElement::unit(A) : AlgElement(A);
      if (!(a == expect) || !(b == expect)) return false;
    }
  return true;
}

namespace {

// Left multiplication by U on A^d has full rank.
bool left_invertible(const Corep& U) {
  const std::size_t d = U.d;
  const Algebra& A = U.algebra();
  const std::size_t n = A.dim();
  const std::size_t width = d * n;
  std::vector<Terms> cols;
  cols.reserve(width);
  for (std::size_t j = 0; j < d; ++j)
    for (Index b = 0; b < n; ++b) {
      Terms col;
      const AlgElement x = AlgElement::basis(A, b);
      for (std::size_t i = 0; i < d; ++i)
        for (const auto& [k, c] : (U(i, j) * x).terms()) col.emplace_back(static_cast<Index>(i * n + k), c);
      cols.push_back(sparse::normalize(std::move(col)));
    }
  if (width > 600) return rank_float(cols, width) == width;
  RowReducer red(width);
  for (const auto& c : cols) {
    std::vector<CycloNum> dense(width);
    for (const auto& [i, v] : c) dense[i] = v;
    red.add_row(std::move(dense));
  }
  return red.rank() == width;
}

}  // namespace

CorepReport is_corep(const QuantumGroup& G, const Corep& U) {
  CorepReport r;
  const std::size_t d = U.d;
  const Algebra& AA = G.tensor_square();
  r.corep_identity = true;
  r.counit_identity = true;
  for (std::size_t i = 0; i < d && r.corep_identity; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      AlgElement rhs(AA);
      for (std::size_t k = 0; k < d; ++k) {
        if (U(i, k).is_zero() || U(k, j).is_zero()) continue;
        rhs += elem_tensor(U(i, k), U(k, j), AA);
      }
      if (!(G.delta(U(i, j)) == rhs)) {
        r.corep_identity = false;
        break;
      }
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!(G.counit(U(i, j)) == CycloNum(i == j ? 1 : 0))) r.counit_identity = false;
  r.unitary = is_unitary(U);
  r.invertible = r.unitary || left_invertible(U);
  return r;
}

// ---------------------------------------------------------------------------
// Kac-Paljutkin

namespace {

void require_family(const QuantumGroup& G, Family f, const char* what) {
  if (G.family() != f) throw std::invalid_argument(std::string(what) + ": wrong quantum group family");
}

AlgElement kp_element(const Algebra& A, std::initializer_list<std::pair<Index, CycloNum>> terms) {
  return AlgElement(A, Terms(terms.begin(), terms.end()));
}

}  // namespace

std::vector<AlgElement> kp_grouplikes(const QuantumGroup& kp) {
  require_family(kp, Family::kKacPaljutkin, "kp_grouplikes");
  const Algebra& A = kp.algebra();
  // e1 e2 e3 e4 E11 E12 E21 E22
  auto diag = [&](int x2, int x3, int c11, int c22) {
    return kp_element(A, {{0, 1}, {1, x2}, {2, x3}, {3, 1}, {4, c11}, {7, c22}});
  };
  return {diag(1, 1, 1, 1), diag(1, 1, -1, -1), diag(-1, -1, 1, -1), diag(-1, -1, -1, 1)};
}

Corep kp_fundamental(const QuantumGroup& kp, int a, int j) {
  require_family(kp, Family::kKacPaljutkin, "kp_fundamental");
  if (a != 1 && a != -1) throw std::invalid_argument("a must be +1 or -1");
  const Algebra& A = kp.algebra();
  const CycloNum lam = CycloNum::root_of_unity(8, j);
  const CycloNum lamb = lam.conj();
  const CycloNum ia = CycloNum::root_of_unity(8, 2) * CycloNum(a);
  const AlgElement x11 = kp_element(A, {{0, 1}, {1, a}, {2, -a}, {3, -1}});
  const AlgElement x22 = kp_element(A, {{0, 1}, {1, -a}, {2, a}, {3, -1}});
  const AlgElement x12 = kp_element(A, {{5, lam}, {6, ia * lam}});
  const AlgElement x21 = kp_element(A, {{5, lamb}, {6, -(ia * lamb)}});
  return make_grid("X", 2, {x11, x12, x21, x22});
}

bool kp_generation_check(const QuantumGroup& kp, int a, int j) {
  const Corep X = kp_fundamental(kp, a, j);
  const Algebra& A = kp.algebra();
  const CycloNum lam = CycloNum::root_of_unity(8, j);
  const CycloNum lamb = lam.conj();
  const CycloNum ia = CycloNum::root_of_unity(8, 2) * CycloNum(a);
  const CycloNum q(Rational(1, 4)), h(Rational(1, 2));
  const AlgElement &x11 = X(0, 0), &x12 = X(0, 1), &x21 = X(1, 0), &x22 = X(1, 1);
  const AlgElement sq_p = x11 * x11 + x11 * x22;
  const AlgElement sq_m = x11 * x11 - x11 * x22;
  const AlgElement s = x11 + x22;
  const AlgElement t = x11 - x22;
  const AlgElement xx = x12 * x12.star();
  const AlgElement xy = x12 * x21;
  const std::vector<AlgElement> rebuilt = {
      q * sq_p + q * s,                                    // e1
      q * sq_m + (q * CycloNum(a)) * t,                    // e2
      q * sq_m - (q * CycloNum(a)) * t,                    // e3
      q * sq_p - q * s,                                    // e4
      h * (xx + ia * xy),                                  // E11
      h * (lamb * x12 + lam * x21),                        // E12
      (-(ia * h)) * (lamb * x12 - lam * x21),              // E21
      h * (xx - ia * xy),                                  // E22
  };
  for (Index i = 0; i < 8; ++i)
    if (!(rebuilt[i] == AlgElement::basis(A, i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sekine family

namespace {

CycloNum eta_pow(Index n, std::int64_t e) { return CycloNum::root_of_unity(2 * n, 2 * e); }

}  // namespace

std::int64_t sekine_v_max(Index n) { return n % 2 == 1 ? (n - 1) / 2 : n / 2 - 1; }

AlgElement sekine_one_dim(const QuantumGroup& G, std::int64_t l, int sign, OneDimKind kind) {
  require_family(G, Family::kSekine, "sekine_one_dim");
  const Index n = G.param();
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (l < 0 || l >= static_cast<std::int64_t>(n)) throw std::invalid_argument("l out of range");
  if (kind == OneDimKind::kSigma && n % 2 != 0) throw std::invalid_argument("sigma characters need n even");
  const SekineLayout L{n};
  const auto nn = static_cast<std::int64_t>(n);
  Terms t;
  for (std::int64_t i = 0; i < nn; ++i)
    for (std::int64_t j = 0; j < nn; ++j) {
      CycloNum c = eta_pow(n, i * l);
      if (kind == OneDimKind::kSigma && j % 2 == 1) c = -c;
      t.emplace_back(L.e(i, j), c);
    }
  for (std::int64_t i = 0; i < nn; ++i) {
    int s = sign;
    if (kind == OneDimKind::kSigma && i % 2 == 1) s = -s;
    t.emplace_back(L.E(i, i + l), CycloNum(s));
  }
  return AlgElement(G.algebra(), std::move(t));
}

Corep sekine_two_dim(const QuantumGroup& G, std::int64_t u, std::int64_t v, bool check_range) {
  require_family(G, Family::kSekine, "sekine_two_dim");
  const Index n = G.param();
  const auto nn = static_cast<std::int64_t>(n);
  if (check_range && (u < 0 || u >= nn || v < 1 || v > sekine_v_max(n)))
    throw std::invalid_argument("(u, v) outside the irreducible range");
  const SekineLayout L{n};
  const Algebra& A = G.algebra();
  Terms x11, x22, x12, x21;
  for (std::int64_t i = 0; i < nn; ++i)
    for (std::int64_t j = 0; j < nn; ++j) {
      x11.emplace_back(L.e(i, j), eta_pow(n, i * u + j * v));
      x22.emplace_back(L.e(i, j), eta_pow(n, i * u - j * v));
    }
  for (std::int64_t i = 0; i < nn; ++i) {
    x12.emplace_back(L.E(i, i + u), eta_pow(n, -i * v));
    x21.emplace_back(L.E(i, i + u), eta_pow(n, i * v));
  }
  return make_grid("X(" + std::to_string(u) + "," + std::to_string(v) + ")", 2,
                   {AlgElement(A, x11), AlgElement(A, x12), AlgElement(A, x21), AlgElement(A, x22)});
}

Corep dual_fundamental(const QuantumGroup& D) {
  require_family(D, Family::kDualSekine, "dual_fundamental");
  const Index n = D.param();
  const SekineLayout L{n};
  std::vector<AlgElement> entries;
  for (Index i = 1; i <= n; ++i)
    for (Index j = 1; j <= n; ++j) entries.push_back(AlgElement::basis(D.algebra(), L.E(i, j)));
  return make_grid("Xhat", n, std::move(entries));
}

Corep corep_power(const Corep& U, unsigned k, unsigned max_power) {
  if (k > max_power) throw std::invalid_argument("power " + std::to_string(k) + " above limit " + std::to_string(max_power));
  Corep result = identity_grid(U.algebra(), U.d);
  Corep base = U;
  while (k != 0) {
    if (k & 1U) result = grid_multiply(result, base);
    k >>= 1U;
    if (k != 0) base = grid_multiply(base, base);
  }
  result.label = U.label + "^k";
  return result;
}

AlgElement corep_trace(const Corep& U) {
  AlgElement acc(U.algebra());
  for (std::size_t i = 0; i < U.d; ++i) acc += U(i, i);
  return acc;
}

// ---------------------------------------------------------------------------
// Intertwiners

std::vector<CycloMatrix> intertwiners(const Corep& U, const Corep& V) {
  if (!(U.algebra() == V.algebra())) throw std::invalid_argument("coreps over different algebras");
  const std::size_t du = U.d, dv = V.d;
  const std::size_t width = du * dv;
  RowReducer red(width);
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t j = 0; j < du; ++j) {
      // sum_k T_ik U_kj - sum_k V_ik T_kj, collected per basis element
      std::map<Index, Terms> rows;
      for (std::size_t k = 0; k < du; ++k)
        for (const auto& [b, c] : U(k, j).terms()) rows[b].emplace_back(static_cast<Index>(i * du + k), c);
      for (std::size_t k = 0; k < dv; ++k)
        for (const auto& [b, c] : V(i, k).terms()) rows[b].emplace_back(static_cast<Index>(k * du + j), -c);
      for (auto& [b, r] : rows) {
        const Terms t = sparse::normalize(std::move(r));
        if (t.empty()) continue;
        std::vector<CycloNum> dense(width);
        for (const auto& [x, c] : t) dense[x] = c;
        red.add_row(std::move(dense));
      }
    }
  std::vector<CycloMatrix> out;
  for (const auto& v : red.nullspace()) {
    CycloMatrix T(dv, du);
    for (std::size_t a = 0; a < dv; ++a)
      for (std::size_t b = 0; b < du; ++b) T(a, b) = v[a * du + b];
    out.push_back(std::move(T));
  }
  return out;
}

bool is_irreducible(const Corep& U) { return intertwiners(U, U).size() == 1; }
bool equivalent(const Corep& U, const Corep& V) { return !intertwiners(U, V).empty(); }

// ---------------------------------------------------------------------------
// Catalogs

namespace {

Corep one_dim(std::string label, AlgElement g) { return make_grid(std::move(label), 1, {std::move(g)}); }

}  // namespace

IrrepCatalog irrep_catalog(const QuantumGroup& G) {
  IrrepCatalog cat;
  cat.group = G.name();
  switch (G.family()) {
    case Family::kKacPaljutkin: {
      const auto g = kp_grouplikes(G);
      for (std::size_t i = 0; i < g.size(); ++i) cat.irreps.push_back(one_dim("g" + std::to_string(i + 1), g[i]));
      cat.irreps.push_back(kp_fundamental(G, 1, 1));
      break;
    }
    case Family::kSekine: {
      const Index n = G.param();
      for (int sign : {1, -1})
        for (std::int64_t l = 0; l < n; ++l)
          cat.irreps.push_back(one_dim(std::string("rho") + (sign > 0 ? "+" : "-") + "_" + std::to_string(l),
                                       sekine_one_dim(G, l, sign, OneDimKind::kRho)));
      if (n % 2 == 0)
        for (int sign : {1, -1})
          for (std::int64_t l = 0; l < n; ++l)
            cat.irreps.push_back(one_dim(std::string("sigma") + (sign > 0 ? "+" : "-") + "_" + std::to_string(l),
                                         sekine_one_dim(G, l, sign, OneDimKind::kSigma)));
      for (std::int64_t u = 0; u < n; ++u)
        for (std::int64_t v = 1; v <= sekine_v_max(n); ++v) cat.irreps.push_back(sekine_two_dim(G, u, v));
      break;
    }
    case Family::kDualSekine: {
      const SekineLayout L{G.param()};
      for (Index i = 0; i < L.n; ++i)
        for (Index j = 0; j < L.n; ++j)
          cat.irreps.push_back(one_dim(G.algebra().label(L.e(i, j)), AlgElement::basis(G.algebra(), L.e(i, j))));
      cat.irreps.push_back(dual_fundamental(G));
      break;
    }
    case Family::kGeneric:
      throw std::invalid_argument("no irreducible catalog for generic quantum groups");
  }
  return cat;
}

Report verify_complete(const QuantumGroup& G, const IrrepCatalog& catalog) {
  Report rep;
  rep.subject = G.name();
  std::size_t sum = 0;
  for (const auto& U : catalog.irreps) sum += U.d * U.d;
  rep.add("sum of squared dimensions", sum == G.dim(), std::to_string(sum) + " vs dim " + std::to_string(G.dim()));

  bool coreps_ok = true;
  std::string bad;
  for (const auto& U : catalog.irreps) {
    const CorepReport r = is_corep(G, U);
    if (!r.ok() || !r.unitary) {
      coreps_ok = false;
      if (bad.empty()) bad = U.label + ": " + r.str();
    }
  }
  rep.add("entries are unitary corepresentations", coreps_ok, bad);

  std::vector<AlgElement> chars;
  for (const auto& U : catalog.irreps) chars.push_back(corep_trace(U));
  bool orth = true;
  std::string orth_bad;
  for (std::size_t a = 0; a < chars.size() && orth; ++a) {
    const AlgElement cs = chars[a].star();
    for (std::size_t b = 0; b < chars.size(); ++b) {
      const CycloNum v = G.haar(chars[b] * cs);
      if (!(v == CycloNum(a == b ? 1 : 0))) {
        orth = false;
        orth_bad = catalog.irreps[a].label + " vs " + catalog.irreps[b].label + " gives " + v.str();
        break;
      }
    }
  }
  rep.add("character orthogonality", orth, orth_bad);

  bool inequiv = true;
  std::string ineq_bad;
  for (std::size_t a = 0; a < catalog.irreps.size() && inequiv; ++a) {
    if (intertwiners(catalog.irreps[a], catalog.irreps[a]).size() != 1) {
      inequiv = false;
      ineq_bad = catalog.irreps[a].label + " is reducible";
      break;
    }
    for (std::size_t b = a + 1; b < catalog.irreps.size(); ++b)
      if (!intertwiners(catalog.irreps[a], catalog.irreps[b]).empty()) {
        inequiv = false;
        ineq_bad = catalog.irreps[a].label + " ~ " + catalog.irreps[b].label;
        break;
      }
  }
  rep.add("irreducible and pairwise inequivalent", inequiv, ineq_bad);
  return rep;
}

json element_to_json(const AlgElement& a) {
  json out = json::object();
  for (const auto& [i, c] : a.terms()) out[a.algebra().label(i)] = cyclo_to_json(c);
  return out;
}

json catalog_to_json(const IrrepCatalog& catalog) {
  json list = json::array();
  for (const auto& U : catalog.irreps) {
    json rows = json::array();
    for (std::size_t i = 0; i < U.d; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < U.d; ++j) row.push_back(element_to_json(U(i, j)));
      rows.push_back(std::move(row));
    }
    list.push_back(json{{"label", U.label}, {"d", U.d}, {"entries", std::move(rows)}});
  }
  return list;
}

}  // namespace fqg
