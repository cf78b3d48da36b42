#include <doctest.h>

#include "fqg/coreps.hpp"
#include "oracles.hpp"

using namespace fqg;

namespace {

std::size_t expected_irreps(Index n) { return n % 2 ? 2 * n + n * (n - 1) / 2 : 4 * n + n * (n - 2) / 2; }

std::size_t dimension_squares(const IrrepCatalog& c) {
  std::size_t s = 0;
  for (const auto& U : c.irreps) s += U.d * U.d;
  return s;
}

}  // namespace

TEST_CASE("catalog sizes") {
  const QuantumGroup kp = build_kp();
  const IrrepCatalog c = irrep_catalog(kp);
  CHECK(c.irreps.size() == 5);
  CHECK(dimension_squares(c) == 8);
  for (Index n = 2; n <= 8; ++n) {
    CAPTURE(n);
    const QuantumGroup G = build_sekine(n);
    const IrrepCatalog cat = irrep_catalog(G);
    CHECK(cat.irreps.size() == expected_irreps(n));
    CHECK(dimension_squares(cat) == G.dim());
    if (n <= 5) CHECK(verify_complete(G, cat).passed());
  }
  for (Index n : {2, 3, 4}) {
    const QuantumGroup D = dual(build_sekine(n));
    const IrrepCatalog cat = irrep_catalog(D);
    CHECK(cat.irreps.size() == n * n + 1);
    CHECK(dimension_squares(cat) == D.dim());
    CHECK(verify_complete(D, cat).passed());
  }
  CHECK_THROWS_AS(irrep_catalog(dual(kp)), std::invalid_argument);
}

TEST_CASE("Kac-Paljutkin fundamentals") {
  const QuantumGroup G = build_kp();
  const Corep X0 = kp_fundamental(G, 1, 1);
  for (int a : {-1, 1})
    for (int j = 0; j < 8; ++j) {
      CAPTURE(a);
      CAPTURE(j);
      const Corep U = kp_fundamental(G, a, j);
      CHECK(is_corep(G, U).ok());
      CHECK(is_unitary(U));
      CHECK(is_irreducible(U));
      CHECK(kp_generation_check(G, a, j));
      // There is one two-dimensional irreducible up to equivalence.
      CHECK(equivalent(U, X0));
    }
  const auto g = kp_grouplikes(G);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == AlgElement::unit(G.algebra()));
  for (const auto& x : g) {
    CHECK(G.delta(x) == elem_tensor(x, x, G.tensor_square()));
    CHECK(x * x.star() == AlgElement::unit(G.algebra()));
  }
}

TEST_CASE("Sekine irreducibles are unitary corepresentations") {
  for (Index n : {3, 4, 6}) {
    const QuantumGroup G = build_sekine(n);
    for (const Corep& U : irrep_catalog(G).irreps) {
      CAPTURE(U.label);
      CHECK(is_corep(G, U).ok());
      CHECK(is_unitary(U));
    }
  }
  const QuantumGroup G = build_sekine(5);
  CHECK(sekine_v_max(5) == 2);
  CHECK_THROWS(sekine_two_dim(G, 0, 3));
  // Outside the irreducible range the same formula is still a corepresentation.
  const Corep R = sekine_two_dim(G, 1, 0, false);
  CHECK(is_corep(G, R).ok());
  CHECK_FALSE(is_irreducible(R));
}

TEST_CASE("intertwiners count multiplicities") {
  const QuantumGroup G = build_sekine(3);
  const Corep X = sekine_two_dim(G, 0, 1);
  const Corep XX = grid_multiply(X, identity_grid(G.algebra(), 2));
  CHECK(intertwiners(X, X).size() == 1);
  CHECK(intertwiners(X, XX).size() == 1);
  const Corep S = direct_sum(X, X);
  CHECK(intertwiners(S, S).size() == 4);
  CHECK(intertwiners(X, sekine_two_dim(G, 1, 1)).empty());
  CHECK_FALSE(is_irreducible(S));
}

TEST_CASE("powers of a fundamental stay corepresentations") {
  const QuantumGroup G = build_sekine(4);
  const Corep X = sekine_two_dim(G, 1, 1);
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = 0; b <= 3; ++b)
      CHECK(grid_multiply(corep_power(X, a), corep_power(X, b)).entries == corep_power(X, a + b).entries);
  CHECK(is_corep(G, corep_power(X, 5)).ok());
  CHECK_THROWS(corep_power(X, 65));
}

TEST_CASE("Schur orthogonality against the floating route") {
  for (const QuantumGroup& G : {build_kp(), build_sekine(3), build_sekine(4)}) {
    const auto irreps = irrep_catalog(G).irreps;
    for (std::size_t s = 0; s < irreps.size(); ++s)
      for (std::size_t t = 0; t < irreps.size(); ++t) {
        const Corep &U = irreps[s], &V = irreps[t];
        for (std::size_t i = 0; i < U.d; ++i)
          for (std::size_t j = 0; j < U.d; ++j)
            for (std::size_t k = 0; k < V.d; ++k)
              for (std::size_t l = 0; l < V.d; ++l) {
                const double expect = (s == t && i == k && j == l) ? 1.0 / static_cast<double>(U.d) : 0.0;
                CHECK(std::abs(oracle::haar_word(G, {V(k, l).star(), U(i, j)}) - expect) < 1e-9);
              }
      }
  }
}

TEST_CASE("dual fundamental") {
  const QuantumGroup D = dual(build_sekine(3));
  const Corep X = dual_fundamental(D);
  CHECK(X.d == 3);
  CHECK(is_corep(D, X).ok());
  CHECK(is_unitary(X));
  CHECK(is_irreducible(X));
  CHECK(std::abs(oracle::haar_word_regular(D, {corep_trace(X).star(), corep_trace(X)}) - 1.0) < 1e-9);
}

TEST_CASE("catalog serialization") {
  const json j = catalog_to_json(irrep_catalog(build_kp()));
  REQUIRE(j.is_array());
  CHECK(j.size() == 5);
  CHECK(j[4]["d"] == 2);
  CHECK(j.dump() == catalog_to_json(irrep_catalog(build_kp())).dump());
}
