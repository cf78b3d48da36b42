#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fqg/rational.hpp"

namespace fqg {

class CycloField;

/// Element of the cyclotomic field Q(zeta_m).
///
/// Stored sparsely in the power basis 1, zeta, ..., zeta^(phi(m)-1) of
/// Q[x]/Phi_m(x). Reduction modulo Phi_m keeps the form canonical, so two
/// numbers with the same conductor are equal iff their term lists are equal.
/// Mixed-conductor operations lift both operands to the lcm conductor.
class CycloNum {
 public:
  using Term = std::pair<std::uint32_t, Rational>;

  CycloNum();
  CycloNum(std::int64_t v);  // NOLINT(google-explicit-constructor)
  CycloNum(int v);           // NOLINT(google-explicit-constructor)
  CycloNum(Rational r);      // NOLINT(google-explicit-constructor)

  /// zeta_m^e for any integer exponent.
  static CycloNum root_of_unity(std::uint32_t m, std::int64_t e);
  /// cos(2 pi e / m) = (zeta_m^e + zeta_m^-e) / 2.
  static CycloNum cos_2pi(std::uint32_t m, std::int64_t e);
  /// Builds from the dense power-basis coordinates; length must be phi(m).
  static CycloNum from_coeffs(std::uint32_t m, const std::vector<Rational>& coeffs);

  std::uint32_t conductor() const;
  const CycloField& field() const { return *field_; }
  const std::vector<Term>& terms() const { return terms_; }
  /// Dense coordinates, length phi(m).
  std::vector<Rational> coeffs() const;

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_rational() const;
  /// Throws std::domain_error when not rational.
  Rational to_rational() const;
  bool is_real() const;

  /// Same value expressed over conductor M (m must divide M).
  CycloNum lift(std::uint32_t M) const;

  CycloNum conj() const;
  std::complex<double> embed() const;
  std::complex<long double> embed_long() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& rhs);
  CycloNum& operator-=(const CycloNum& rhs);
  CycloNum& operator*=(const CycloNum& rhs);
  CycloNum& operator/=(const CycloNum& rhs);
  CycloNum& operator*=(const Rational& rhs);

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }

  friend bool operator==(const CycloNum& a, const CycloNum& b);

  /// this += a * b without temporaries where possible.
  void add_product(const CycloNum& a, const CycloNum& b);

  CycloNum inverse() const;
  CycloNum pow(unsigned e) const;

  /// Human-readable form, e.g. "1/2 + 3 z^2" with z = zeta_m.
  std::string str() const;

 private:
  CycloNum(const CycloField* f, std::vector<Term> terms) : field_(f), terms_(std::move(terms)) {}

  const CycloField* field_;
  std::vector<Term> terms_;

  friend class CycloField;
};

using Cyclo = CycloNum;

/// Reduction data for one conductor. Instances are interned and live for the
/// whole process; lookups are thread-safe.
class CycloField {
 public:
  static const CycloField& get(std::uint32_t m);
  /// Throws std::overflow_error when lcm(a, b) exceeds max_conductor().
  static std::uint32_t lcm_conductor(std::uint32_t a, std::uint32_t b);
  /// Defaults to 10^6; overridden by FQG_MAX_CONDUCTOR or set_max_conductor.
  static std::uint64_t max_conductor();
  static void set_max_conductor(std::uint64_t bound);

  std::uint32_t m() const { return m_; }
  std::uint32_t degree() const { return degree_; }
  /// Coefficients of Phi_m, lowest degree first.
  const std::vector<std::int64_t>& cyclotomic_polynomial() const { return phi_; }
  /// Canonical form of x^e for 0 <= e < m.
  const std::vector<std::pair<std::uint32_t, std::int64_t>>& power(std::uint32_t e) const {
    return powers_[e];
  }

 private:
  explicit CycloField(std::uint32_t m);

  std::uint32_t m_;
  std::uint32_t degree_;
  std::vector<std::int64_t> phi_;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> powers_;
};

/// Integer coefficients of Phi_m, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(std::uint32_t m);
std::uint32_t euler_phi(std::uint32_t m);

}  // namespace fqg
