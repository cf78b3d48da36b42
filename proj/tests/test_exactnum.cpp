#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fqg/cyclo.hpp"
#include "fqg/rational.hpp"

using namespace fqg;

namespace {

std::complex<double> polar_root(std::uint32_t m, std::int64_t e) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(m));
}

CycloNum random_cyclo(std::mt19937_64& rng, std::uint32_t m, int terms = 4) {
  std::uniform_int_distribution<std::int64_t> c(-9, 9), e(0, m - 1), d(1, 5);
  CycloNum x;
  for (int i = 0; i < terms; ++i) x += CycloNum::root_of_unity(m, e(rng)) * CycloNum(Rational(c(rng), d(rng)));
  return x;
}

bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("rational canonical form and sign") {
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational(0, 7).str() == "0/1");
  CHECK(Rational(5).pretty() == "5");
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-2, 3).sign() == -1);
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(3, 4).inverse() == Rational(4, 3));
}

TEST_CASE("rational arithmetic agrees with GMP on values near the 64-bit edge") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> big(-(std::int64_t{1} << 62), std::int64_t{1} << 62);
  std::uniform_int_distribution<std::int64_t> den(1, std::int64_t{1} << 40);
  for (int trial = 0; trial < 500; ++trial) {
    const std::int64_t a = big(rng), b = den(rng), c = big(rng), d = den(rng);
    const Rational x(a, b), y(c, d);
    const mpq_class qx(mpz_class(std::to_string(a)), mpz_class(std::to_string(b)));
    const mpq_class qy(mpz_class(std::to_string(c)), mpz_class(std::to_string(d)));
    mpq_class sum = qx + qy, prod = qx * qy, quo = qx / qy;
    sum.canonicalize();
    prod.canonicalize();
    quo.canonicalize();
    mpq_class qxc = qx;
    qxc.canonicalize();
    CHECK((x + y).to_mpq() == sum);
    CHECK((x * y).to_mpq() == prod);
    if (c != 0) CHECK((x / y).to_mpq() == quo);
    // The representation returns to the inline form when values shrink.
    CHECK(((x * y) / y).to_mpq() == qxc);
  }
  const Rational huge = Rational(std::int64_t{1} << 62).pow(3);
  CHECK_FALSE(huge.is_small());
  CHECK((huge / huge).is_one());
  CHECK((huge / Rational(std::int64_t{1} << 62).pow(2)).is_small());
}

TEST_CASE("binomials and factorials") {
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(4, 7) == 0);
  CHECK(factorial(20) == mpz_class("2432902008176640000"));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(101) == 100);
  const auto p12 = cyclotomic_polynomial(12);  // x^4 - x^2 + 1
  REQUIRE(p12.size() == 5);
  CHECK(p12[0] == 1);
  CHECK(p12[2] == -1);
  CHECK(p12[4] == 1);
  const auto p105 = cyclotomic_polynomial(105);  // first coefficient of magnitude 2
  bool has_two = false;
  for (const auto& c : p105) has_two = has_two || c == -2;
  CHECK(has_two);
}

TEST_CASE("roots of unity embed at the right angle") {
  for (std::uint32_t m : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 10u, 12u, 14u, 18u, 30u, 202u})
    for (std::int64_t e = -3; e <= static_cast<std::int64_t>(m) + 3; ++e)
      CHECK(close(CycloNum::root_of_unity(m, e).embed(), polar_root(m, e)));
  CHECK(CycloNum::root_of_unity(2, 1) == CycloNum(-1));
  CHECK(CycloNum::root_of_unity(4, 2) == CycloNum(-1));
  CHECK(CycloNum::root_of_unity(8, 8) == CycloNum(1));
  CHECK(CycloNum::root_of_unity(6, 2) == CycloNum::root_of_unity(3, 1));
}

TEST_CASE("conductor 2 mod 4 is canonicalized to the odd part") {
  const CycloNum z6 = CycloNum::root_of_unity(6, 1);
  CHECK(z6.conductor() == 3);
  CHECK(z6 == -CycloNum::root_of_unity(3, 2));
  CHECK(CycloNum::root_of_unity(10, 3).conductor() == 5);
  CHECK(CycloNum::root_of_unity(202, 1).conductor() == 101);
}

TEST_CASE("golden ratio cosine") {
  const CycloNum c = CycloNum::root_of_unity(5, 1) + CycloNum::root_of_unity(5, 4);
  CHECK(c.is_real());
  CHECK(std::abs(c.embed().real() - 0.6180339887) < 1e-9);
  CHECK(std::abs(c.embed().imag()) < 1e-9);
  CHECK(c == CycloNum::cos_2pi(5, 1) * CycloNum(2));
  // c^2 + c - 1 = 0.
  CHECK((c * c + c - CycloNum(1)).is_zero());
}

TEST_CASE("sum of all m-th roots vanishes") {
  for (std::uint32_t m : {3u, 4u, 6u, 9u, 12u, 15u, 16u}) {
    CycloNum s;
    for (std::uint32_t e = 0; e < m; ++e) s += CycloNum::root_of_unity(m, e);
    CHECK(s.is_zero());
  }
}

TEST_CASE("field operations agree with complex arithmetic") {
  std::mt19937_64 rng(11);
  for (std::uint32_t m : {3u, 4u, 5u, 8u, 12u, 16u, 20u, 24u}) {
    for (int trial = 0; trial < 25; ++trial) {
      const CycloNum a = random_cyclo(rng, m), b = random_cyclo(rng, m);
      CHECK(close((a + b).embed(), a.embed() + b.embed()));
      CHECK(close((a * b).embed(), a.embed() * b.embed(), 1e-7));
      CHECK(close(a.conj().embed(), std::conj(a.embed())));
      if (!b.is_zero()) {
        CHECK(a / b * b == a);
        CHECK(close((a / b).embed(), a.embed() / b.embed(), 1e-6 * (1 + std::abs(a.embed() / b.embed()))));
      }
      CHECK(a * (b + a) == a * b + a * a);
      CHECK((a * b).conj() == a.conj() * b.conj());
    }
  }
}

TEST_CASE("mixed conductors lift to the lcm") {
  const CycloNum a = CycloNum::root_of_unity(3, 1), b = CycloNum::root_of_unity(4, 1);
  const CycloNum p = a * b;
  CHECK(p.conductor() == 12);
  CHECK(p == CycloNum::root_of_unity(12, 7));
  CHECK(a.lift(12) == a);
  CHECK(close(a.lift(12).embed(), a.embed()));
}

TEST_CASE("dense products with large coefficients match the rational path") {
  // Coefficients near 2^40 force the wide-integer accumulation to overflow
  // checks; scaling back must reproduce the small product exactly.
  std::mt19937_64 rng(3);
  for (std::uint32_t m : {101u, 64u, 45u}) {
    const CycloNum a = random_cyclo(rng, m, 40), b = random_cyclo(rng, m, 40);
    const Rational s(std::int64_t{1} << 40), t(std::int64_t{1} << 41);
    CycloNum as = a, bs = b;
    as *= s;
    bs *= t;
    CycloNum p = as * bs;
    p *= (s * t).inverse();
    CHECK(p == a * b);
    CHECK(close(p.embed(), a.embed() * b.embed(), 1e-6 * (1 + std::abs(a.embed() * b.embed()))));
  }
}

TEST_CASE("inverse and powers") {
  const CycloNum x = CycloNum(2) + CycloNum::root_of_unity(7, 1);
  CHECK(x * x.inverse() == CycloNum(1));
  CHECK(x.pow(5) == x * x * x * x * x);
  CHECK(x.pow(0) == CycloNum(1));
  CHECK_THROWS(CycloNum(0).inverse());
}

TEST_CASE("coefficient round trip") {
  std::mt19937_64 rng(5);
  const CycloNum a = random_cyclo(rng, 15, 6);
  CHECK(CycloNum::from_coeffs(a.conductor(), a.coeffs()) == a);
  CHECK_THROWS_AS(CycloNum::from_coeffs(15, {Rational(1)}), std::invalid_argument);
}

TEST_CASE("conductor bound is enforced") {
  const auto saved = CycloField::max_conductor();
  CycloField::set_max_conductor(100);
  CHECK_THROWS_AS(CycloNum::root_of_unity(101, 1), std::overflow_error);
  CHECK_THROWS_AS(CycloNum::root_of_unity(7, 1) * CycloNum::root_of_unity(16, 1), std::overflow_error);
  CycloField::set_max_conductor(saved);
  CHECK(CycloNum::root_of_unity(7, 1) * CycloNum::root_of_unity(16, 1) == CycloNum::root_of_unity(112, 23));
}
