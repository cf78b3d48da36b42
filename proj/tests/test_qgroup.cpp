#include <doctest.h>

#include <random>

#include "fqg/io.hpp"
#include "fqg/qgroup.hpp"

using namespace fqg;

namespace {

// (id (x) h) Delta(b_i) and (h (x) id) Delta(b_i), evaluated term by term.
std::pair<Terms, Terms> partial_haar(const QuantumGroup& G, Index i) {
  const auto d = static_cast<Index>(G.dim());
  Terms left, right;
  for (const auto& [k, c] : G.delta_basis(i)) {
    const Index a = k / d, b = k % d;
    left.emplace_back(a, c * G.haar_weights()[b]);
    right.emplace_back(b, c * G.haar_weights()[a]);
  }
  return {sparse::normalize(left), sparse::normalize(right)};
}

}  // namespace

TEST_CASE("Kac-Paljutkin Haar weights and shape") {
  const QuantumGroup G = build_kp();
  CHECK(G.dim() == 8);
  const auto& h = G.haar_weights();
  for (Index i = 0; i < 4; ++i) CHECK(h[i] == CycloNum(Rational(1, 8)));
  CHECK(h[4] == CycloNum(Rational(1, 4)));
  CHECK(h[5].is_zero());
  CHECK(h[6].is_zero());
  CHECK(h[7] == CycloNum(Rational(1, 4)));
  CHECK_FALSE(verify_cocommutative(G));
}

TEST_CASE("Haar functional is invariant on both sides") {
  for (const QuantumGroup& G : {build_kp(), build_sekine(3), build_sekine(4)}) {
    const Terms one = G.algebra().unit();
    for (Index i = 0; i < G.dim(); ++i) {
      const auto [left, right] = partial_haar(G, i);
      Terms expect;
      for (const auto& [k, c] : one) expect.emplace_back(k, c * G.haar_weights()[i]);
      expect = sparse::normalize(expect);
      CHECK(left == expect);
      CHECK(right == expect);
    }
  }
}

TEST_CASE("Sekine Haar weights and coproduct sizes") {
  for (Index n : {2, 3, 4, 5}) {
    const QuantumGroup G = build_sekine(n);
    const SekineLayout L{n};
    CHECK(G.dim() == 2 * n * n);
    const auto n2 = static_cast<std::int64_t>(n * n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        CHECK(G.haar_weights()[L.e(i, j)] == CycloNum(Rational(1, 2 * n2)));
        CHECK(G.haar_weights()[L.E(i, j)] == (i == j ? CycloNum(Rational(1, 2 * static_cast<std::int64_t>(n)))
                                                     : CycloNum(0)));
      }
    CHECK(G.counit_weights()[L.e(0, 0)] == CycloNum(1));
    // The counit projection splits over every basis pair of the group.
    CHECK(G.delta_basis(L.e(0, 0)).size() == 2 * n * n);
    if (n >= 3) CHECK_FALSE(verify_cocommutative(G));
  }
  CHECK_THROWS_AS(build_sekine(1), std::invalid_argument);
}

TEST_CASE("Hopf axioms, Haar state and cancellation") {
  for (const QuantumGroup& G : {build_kp(), build_sekine(2), build_sekine(3), dual(build_kp()), dual(build_sekine(3))}) {
    CAPTURE(G.name());
    CHECK(verify_hopf(G).passed());
    CHECK(verify_haar(G).passed());
    CHECK(verify_cancellation(G).passed());
    CHECK(cancellation_rank_exact(G, true) == G.dim() * G.dim());
    CHECK(cancellation_rank_exact(G, false) == G.dim() * G.dim());
  }
}

TEST_CASE("Haar state is the unique normalized invariant functional") {
  for (const QuantumGroup& G : {build_kp(), build_sekine(3)}) {
    const HaarUniqueness u = haar_uniqueness(G);
    CHECK(u.solution_dim == 1);
    CHECK(u.equals_haar);
  }
}

TEST_CASE("normalized integral absorbs the algebra") {
  const QuantumGroup G = build_sekine(3);
  const AlgElement L = normalized_integral(G);
  CHECK(G.counit(L) == CycloNum(1));
  for (Index i = 0; i < G.dim(); ++i) {
    const AlgElement b = AlgElement::basis(G.algebra(), i);
    CHECK(b * L == G.counit(b) * L);
    CHECK(L * b == G.counit(b) * L);
  }
}

TEST_CASE("duality swaps commutativity and cocommutativity") {
  const QuantumGroup G = build_kp();
  const QuantumGroup D = dual(G);
  CHECK(D.dim() == G.dim());
  CHECK(D.family() == Family::kGeneric);
  CHECK_FALSE(verify_cocommutative(D));
  const QuantumGroup DD = dual(D);
  CHECK(DD.dim() == G.dim());
  CHECK(verify_hopf(DD).passed());
  // Dual of the dual reproduces the original multiplication on the basis.
  for (Index i = 0; i < G.dim(); ++i)
    for (Index j = 0; j < G.dim(); ++j)
      CHECK((AlgElement::basis(DD.algebra(), i) * AlgElement::basis(DD.algebra(), j)).terms() ==
            (AlgElement::basis(G.algebra(), i) * AlgElement::basis(G.algebra(), j)).terms());
}

TEST_CASE("mutated coproducts are rejected") {
  const QuantumGroup G = build_kp();
  for (Index i = 0; i < G.dim(); ++i) {
    Terms col = G.delta_basis(i);
    col.front().second *= CycloNum(2);
    CHECK_FALSE(verify_hopf(G.with_delta_column(i, col)).passed());
  }
  CHECK_THROWS_AS(dual(G.with_delta_column(0, {})), std::invalid_argument);
}

TEST_CASE("fixture round trip is exact") {
  for (const QuantumGroup& G : {build_kp(), build_sekine(3), dual(build_sekine(2))}) {
    const json j = group_to_json(G);
    const QuantumGroup H = group_from_json(j);
    CHECK(H.dim() == G.dim());
    CHECK(group_to_json(H).dump() == j.dump());
    CHECK(verify_hopf(H).passed());
    for (Index i = 0; i < G.dim(); ++i) CHECK(H.delta_basis(i) == G.delta_basis(i));
  }
}

TEST_CASE("malformed fixtures raise FormatError only") {
  const json base = group_to_json(build_kp());
  std::mt19937_64 rng(99);
  const std::vector<std::string> keys = {"dim", "labels", "mult", "unit", "star", "m",
                                         "delta", "counit", "antipode", "haar", "name"};
  const std::vector<json> junk = {json(), json(-1), json(1u << 30), json("x"), json::array(),
                                  json::array({json::array({99, 0, 0, "1"})}), json::object(),
                                  json::array({json::array({0, 0, 0, "1/0"})}),
                                  json::array({json::array({0, 0, 0, json{{"m", 1 << 20}, {"coeffs", {"1"}}}})})};
  int rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    json j = base;
    const std::string& key = keys[rng() % keys.size()];
    if (rng() % 5 == 0)
      j.erase(key);
    else
      j[key] = junk[rng() % junk.size()];
    try {
      (void)group_from_json(j);
    } catch (const FormatError&) {
      ++rejected;
    } catch (const std::exception& e) {
      FAIL("unexpected exception type: " << e.what());
    }
  }
  CHECK(rejected > 200);
  CHECK_THROWS_AS(load_group_file("/nonexistent/fixture.json"), FormatError);
}

TEST_CASE("cyclotomic values round trip through json") {
  const CycloNum x = CycloNum::root_of_unity(8, 3) * CycloNum(Rational(-2, 3)) + CycloNum(Rational(1, 5));
  CHECK(cyclo_from_json(cyclo_to_json(x)) == x);
  CHECK(cyclo_to_json(CycloNum(Rational(3, 4))) == json("3/4"));
  CHECK_THROWS_AS(cyclo_from_json(json{{"m", 4}, {"coeffs", {"1"}}}), FormatError);
}
