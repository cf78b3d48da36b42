#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <optional>
#include <string_view>

namespace fqg {

using Integer = mpz_class;

/// Exact rational number.
///
/// Values whose numerator and denominator fit in 64 bits are kept inline and
/// handled with 128-bit intermediates; anything larger moves to a GMP
/// rational. The representation is always canonical: gcd(|num|, den) = 1,
/// den >= 1, and the inline form is used whenever the value fits.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : num_(n) {}           // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const Integer& n);
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& other);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  /// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  Integer numerator() const;
  Integer denominator() const;
  mpq_class to_mpq() const;
  double to_double() const;

  /// Canonical "p/q" form (always with a denominator).
  std::string str() const;
  /// "p" for integers, "p/q" otherwise.
  std::string pretty() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational inverse() const;
  Rational pow(unsigned e) const;

  bool is_small() const { return !big_; }
  /// The value when it is an integer held inline.
  std::optional<std::int64_t> small_integer() const {
    if (big_ || den_ != 1) return std::nullopt;
    return num_;
  }

 private:
  void assign_mpq(mpq_class q);
  void assign_i128(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

Integer binomial(unsigned n, unsigned k);
Integer factorial(unsigned n);

}  // namespace fqg
