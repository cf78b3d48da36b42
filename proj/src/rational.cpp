#include "fqg/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fqg {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();

bool fits64(i128 v) { return v >= kMin64 && v <= kMax64; }

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class from_i128(i128 v) {
  const bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpz_class from_i64(std::int64_t v) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), v);
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  assign_i128(num, den);
}

Rational::Rational(const Integer& n) { assign_mpq(mpq_class(n)); }

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  assign_mpq(std::move(q));
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  assign_mpq(std::move(c));
}

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::string s(text);
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string ns = s.substr(0, slash);
  std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(ns) || !valid(ds) || ds[0] == '-' || ds[0] == '+')
    throw std::invalid_argument("malformed rational: " + s);
  if (ns[0] == '+') ns.erase(0, 1);
  Integer n(ns), d(ds);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rational(n, d);
}

void Rational::assign_mpq(mpq_class q) {
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
}

void Rational::assign_i128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  if (den != 1) {
    u128 g = gcd128(uabs(num), u128(den));
    if (g > 1) {
      num /= i128(g);
      den /= i128(g);
    }
  }
  if (fits64(num) && fits64(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
  } else {
    mpq_class q(from_i128(num), from_i128(den));
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
  }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Integer Rational::numerator() const { return big_ ? Integer(big_->get_num()) : from_i64(num_); }
Integer Rational::denominator() const { return big_ ? Integer(big_->get_den()) : from_i64(den_); }

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(from_i64(num_), from_i64(den_));
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  return numerator().get_str() + "/" + denominator().get_str();
}

std::string Rational::pretty() const {
  if (is_integer()) return numerator().get_str();
  return str();
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.assign_mpq(-*big_);
  } else {
    r.assign_i128(-i128(num_), den_);
  }
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      assign_i128(i128(num_) + rhs.num_, den_);
    } else {
      const std::int64_t g = static_cast<std::int64_t>(gcd64(den_, rhs.den_));
      const i128 n = i128(num_) * (rhs.den_ / g) + i128(rhs.num_) * (den_ / g);
      const i128 d = i128(den_ / g) * rhs.den_;
      assign_i128(n, d);
    }
    return *this;
  }
  assign_mpq(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    // Cross-cancel first so the 128-bit products stay small.
    const auto g1 = static_cast<std::int64_t>(gcd64(uabs(num_), rhs.den_));
    const auto g2 = static_cast<std::int64_t>(gcd64(uabs(rhs.num_), den_));
    const i128 n = i128(num_ / g1) * (rhs.num_ / g2);
    const i128 d = i128(den_ / g2) * (rhs.den_ / g1);
    if (fits64(n) && fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      assign_i128(n, d);
    }
    return *this;
  }
  assign_mpq(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.inverse(); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Rational r;
  if (big_) {
    r.assign_mpq(1 / *big_);
  } else {
    r.assign_i128(den_, num_);
  }
  return r;
}

Rational Rational::pow(unsigned e) const {
  Rational result(1);
  Rational base(*this);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a value that fits is never stored big
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const i128 l = i128(a.num_) * b.den_;
    const i128 r = i128(b.num_) * a.den_;
    return l <=> r;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace fqg
