#include <doctest.h>

#include <random>

#include "fqg/algebra.hpp"
#include "oracles.hpp"

using namespace fqg;

namespace {

AlgElement random_element(std::mt19937_64& rng, const Algebra& A, int terms = 6) {
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(A.dim() - 1));
  std::uniform_int_distribution<int> c(-4, 4), e(0, 7);
  Terms t;
  for (int i = 0; i < terms; ++i) t.emplace_back(pick(rng), CycloNum(c(rng)) * CycloNum::root_of_unity(8, e(rng)));
  return AlgElement(A, sparse::normalize(t));
}

double block_distance(const std::vector<oracle::Mat>& a, const std::vector<oracle::Mat>& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

TEST_CASE("multimatrix layout") {
  const Algebra A = Algebra::multimatrix({1, 1, 2}, 8);
  CHECK(A.dim() == 6);
  REQUIRE(A.blocks().size() == 3);
  CHECK(A.blocks()[2].offset == 2);
  CHECK(A.blocks()[2].size == 2);
  const AlgElement one = AlgElement::unit(A);
  CHECK(one.nnz() == 4);  // two scalars plus the two diagonal units
  // E12 E21 = E11 inside the matrix block.
  CHECK(AlgElement::basis(A, 3) * AlgElement::basis(A, 4) == AlgElement::basis(A, 2));
  CHECK((AlgElement::basis(A, 4) * AlgElement::basis(A, 4)).is_zero());
  CHECK(A.index_of(A.label(5)) == 5);
}

TEST_CASE("multimatrix products agree with dense complex matrices") {
  std::mt19937_64 rng(1);
  const Algebra A = Algebra::multimatrix({1, 2, 3, 1}, 8);
  for (int trial = 0; trial < 40; ++trial) {
    const AlgElement x = random_element(rng, A), y = random_element(rng, A);
    CHECK(block_distance(oracle::to_blocks(x * y), oracle::multiply(oracle::to_blocks(x), oracle::to_blocks(y))) <
          1e-9);
    // Star is the conjugate transpose on each block.
    const auto xs = oracle::to_blocks(x.star());
    const auto xb = oracle::to_blocks(x);
    for (std::size_t k = 0; k < xb.size(); ++k) CHECK((xs[k] - xb[k].adjoint()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("algebra axioms hold on random elements") {
  std::mt19937_64 rng(2);
  const Algebra A = Algebra::multimatrix({2, 1, 2}, 8);
  const AlgElement one = AlgElement::unit(A);
  for (int trial = 0; trial < 30; ++trial) {
    const AlgElement x = random_element(rng, A), y = random_element(rng, A), z = random_element(rng, A);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(one * x == x);
    CHECK(x * one == x);
    CHECK((x * y).star() == y.star() * x.star());
    CHECK(x.star().star() == x);
    CHECK((x * x.star()).is_normal());
  }
}

TEST_CASE("explicit structure constants reproduce a multimatrix algebra") {
  const Algebra M = Algebra::multimatrix({1, 2}, 4);
  std::vector<Algebra::Constant> constants;
  M.structure().for_each_constant(
      [&](Index i, Index j, Index k, const CycloNum& c) { constants.push_back({i, j, k, c}); });
  std::vector<Terms> star;
  for (Index i = 0; i < M.dim(); ++i) star.push_back(M.star_basis(i));
  const Algebra E = Algebra::from_constants(M.dim(), M.labels(), 4, constants, M.unit(), star);
  CHECK_FALSE(E.is_multimatrix());
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgElement x = random_element(rng, M), y = random_element(rng, M);
    const AlgElement xe(E, x.terms()), ye(E, y.terms());
    CHECK((xe * ye).terms() == (x * y).terms());
    CHECK(xe.star().terms() == x.star().terms());
  }
  CHECK_THROWS_AS(Algebra::from_constants(2, {"a", "b"}, 1, {{0, 5, 0, CycloNum(1)}}, {}, {{}, {}}),
                  std::invalid_argument);
}

TEST_CASE("tensor products multiply factorwise") {
  const Algebra A = Algebra::multimatrix({1, 2}, 4), B = Algebra::multimatrix({2}, 4);
  const Algebra AB = Algebra::tensor(A, B);
  CHECK(AB.dim() == A.dim() * B.dim());
  REQUIRE(AB.factors().has_value());
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgElement a1 = random_element(rng, A, 3), a2 = random_element(rng, A, 3);
    const AlgElement b1 = random_element(rng, B, 3), b2 = random_element(rng, B, 3);
    CHECK(elem_tensor(a1, b1, AB) * elem_tensor(a2, b2, AB) == elem_tensor(a1 * a2, b1 * b2, AB));
    CHECK(elem_tensor(a1, b1, AB).star() == elem_tensor(a1.star(), b1.star(), AB));
  }
}

TEST_CASE("spectra of normal elements") {
  const Algebra A = Algebra::multimatrix({1, 2}, 4);
  // 3 e + (E12 + E21): eigenvalues 3 (x1), 1 and -1 (each with multiplicity 2).
  AlgElement x = AlgElement::basis(A, 0, CycloNum(3)) + AlgElement::basis(A, 2) + AlgElement::basis(A, 3);
  const Spectrum s = spectrum(x);
  CHECK(s.normal);
  REQUIRE(s.merged.size() == 3);
  CHECK(std::abs(s.merged[0].first - std::complex<double>(-1, 0)) < 1e-9);
  CHECK(s.merged[0].second == 2);
  CHECK(s.merged[2].second == 1);
}

TEST_CASE("floating rank") {
  const std::vector<Terms> v = {{{0, CycloNum(1)}, {1, CycloNum(1)}}, {{1, CycloNum(2)}}, {{0, CycloNum(3)}}};
  CHECK(rank_float(v, 2) == 2);
  CHECK(rank_float({{{0, CycloNum(1)}}}, 3) == 1);
}
