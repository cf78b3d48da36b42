#include "fqg/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fqg {
namespace {

using Poly = std::vector<Integer>;  // lowest degree first

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic polynomial; throws if the remainder is nonzero.
Poly divide_exact(Poly num, const Poly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) throw std::logic_error("cyclotomic division underflow");
  Poly q(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const Integer c = num[i];
    if (c == 0) continue;
    q[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  trim(num);
  if (!num.empty()) throw std::logic_error("cyclotomic division left a remainder");
  return q;
}

std::mutex& poly_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::uint32_t, Poly>& poly_cache() {
  static std::map<std::uint32_t, Poly> cache;
  return cache;
}

Poly cyclotomic_locked(std::uint32_t m) {
  auto& cache = poly_cache();
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  Poly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (std::uint32_t d = 1; d < m; ++d) {
    if (m % d == 0) p = divide_exact(std::move(p), cyclotomic_locked(d));
  }
  cache.emplace(m, p);
  return p;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclotomic reduction overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cyclotomic reduction overflow");
  return r;
}

std::uint64_t& max_conductor_slot() {
  static std::uint64_t bound = [] {
    if (const char* env = std::getenv("FQG_MAX_CONDUCTOR")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return static_cast<std::uint64_t>(1000000);
  }();
  return bound;
}

const CycloField* rational_field() {
  static const CycloField* f = &CycloField::get(1);
  return f;
}

// Adds c * v to slot, where v is a small integer from a reduction table.
void add_scaled(Rational& slot, const Rational& c, std::int64_t v) {
  if (v == 1) {
    slot += c;
  } else if (v == -1) {
    slot -= c;
  } else {
    slot += c * Rational(v);
  }
}

// Sums (exponent, value) contributions into a canonical sorted term list.
std::vector<CycloNum::Term> collapse(std::vector<CycloNum::Term>& parts) {
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CycloNum::Term> out;
  out.reserve(parts.size());
  for (auto& p : parts) {
    if (!out.empty() && out.back().first == p.first) {
      out.back().second += p.second;
    } else {
      if (!out.empty() && out.back().second.is_zero()) out.pop_back();
      out.push_back(std::move(p));
    }
  }
  if (!out.empty() && out.back().second.is_zero()) out.pop_back();
  return out;
}

std::vector<CycloNum::Term> from_dense(std::vector<Rational>& dense) {
  std::vector<CycloNum::Term> out;
  for (std::uint32_t k = 0; k < dense.size(); ++k) {
    if (!dense[k].is_zero()) out.emplace_back(k, std::move(dense[k]));
  }
  return out;
}

// Dense product of integer-coefficient numbers with 128-bit accumulation.
// Returns false when a coefficient is not a small integer or on overflow.
bool integer_product(const CycloField& f, const std::vector<CycloNum::Term>& a,
                     const std::vector<CycloNum::Term>& b, std::vector<CycloNum::Term>& out) {
  const std::uint32_t m = f.m();
  std::vector<std::int64_t> bi;
  bi.reserve(b.size());
  for (const auto& [e, c] : b) {
    const auto v = c.small_integer();
    if (!v) return false;
    bi.push_back(*v);
  }
  std::vector<__int128> cyc(m, 0);
  for (const auto& [ea, ca] : a) {
    const auto va = ca.small_integer();
    if (!va) return false;
    const __int128 x = *va;
    for (std::size_t j = 0; j < b.size(); ++j) {
      __int128 p;
      if (__builtin_mul_overflow(x, static_cast<__int128>(bi[j]), &p)) return false;
      __int128& slot = cyc[(ea + b[j].first) % m];
      if (__builtin_add_overflow(slot, p, &slot)) return false;
    }
  }
  std::vector<__int128> dense(f.degree(), 0);
  for (std::uint32_t e = 0; e < m; ++e) {
    if (cyc[e] == 0) continue;
    for (const auto& [k, v] : f.power(e)) {
      __int128 p;
      if (__builtin_mul_overflow(cyc[e], static_cast<__int128>(v), &p)) return false;
      if (__builtin_add_overflow(dense[k], p, &dense[k])) return false;
    }
  }
  out.clear();
  for (std::uint32_t k = 0; k < dense.size(); ++k) {
    if (dense[k] == 0) continue;
    if (dense[k] > INT64_MAX || dense[k] < INT64_MIN) return false;
    out.emplace_back(k, Rational(static_cast<std::int64_t>(dense[k])));
  }
  return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

std::vector<Integer> cyclotomic_polynomial(std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("conductor must be positive");
  std::lock_guard lock(poly_mutex());
  return cyclotomic_locked(m);
}

std::uint32_t euler_phi(std::uint32_t m) {
  std::uint32_t result = m;
  std::uint32_t x = m;
  for (std::uint32_t p = 2; p * p <= x; ++p) {
    if (x % p == 0) {
      while (x % p == 0) x /= p;
      result -= result / p;
    }
  }
  if (x > 1) result -= result / x;
  return result;
}

// ---------------------------------------------------------------------------
// CycloField

CycloField::CycloField(std::uint32_t m) : m_(m) {
  const Poly big = fqg::cyclotomic_polynomial(m);
  degree_ = static_cast<std::uint32_t>(big.size() - 1);
  phi_.reserve(big.size());
  for (const auto& c : big) {
    if (!c.fits_slong_p()) throw std::overflow_error("cyclotomic coefficient overflow");
    phi_.push_back(c.get_si());
  }
  powers_.resize(m);
  std::vector<std::int64_t> cur(degree_, 0);
  for (std::uint32_t e = 0; e < m; ++e) {
    if (e < degree_) {
      std::fill(cur.begin(), cur.end(), 0);
      cur[e] = 1;
    } else {
      // multiply by x and fold the x^degree term back with Phi_m (monic)
      const std::int64_t top = cur[degree_ - 1];
      for (std::uint32_t k = degree_ - 1; k > 0; --k) cur[k] = cur[k - 1];
      cur[0] = 0;
      if (top != 0) {
        for (std::uint32_t k = 0; k < degree_; ++k)
          cur[k] = checked_add(cur[k], -checked_mul(top, phi_[k]));
      }
    }
    auto& out = powers_[e];
    for (std::uint32_t k = 0; k < degree_; ++k)
      if (cur[k] != 0) out.emplace_back(k, cur[k]);
  }
}

const CycloField& CycloField::get(std::uint32_t m) {
  thread_local const CycloField* last = nullptr;
  if (last != nullptr && last->m_ == m) return *last;
  if (m == 0) throw std::invalid_argument("conductor must be positive");
  if (m > max_conductor()) throw std::overflow_error("conductor " + std::to_string(m) + " exceeds bound");
  static std::mutex mutex;
  static std::unordered_map<std::uint32_t, std::unique_ptr<CycloField>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[m];
  if (!slot) slot.reset(new CycloField(m));
  last = slot.get();
  return *slot;
}

std::uint64_t CycloField::max_conductor() { return max_conductor_slot(); }
void CycloField::set_max_conductor(std::uint64_t bound) { max_conductor_slot() = bound; }

std::uint32_t CycloField::lcm_conductor(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t l = std::uint64_t(a) / gcd_u64(a, b) * b;
  if (l > max_conductor())
    throw std::overflow_error("conductor lift lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                              ") exceeds bound " + std::to_string(max_conductor()));
  return static_cast<std::uint32_t>(l);
}

// ---------------------------------------------------------------------------
// CycloNum

CycloNum::CycloNum() : field_(rational_field()) {}

CycloNum::CycloNum(std::int64_t v) : CycloNum(Rational(v)) {}
CycloNum::CycloNum(int v) : CycloNum(Rational(v)) {}

CycloNum::CycloNum(Rational r) : field_(rational_field()) {
  if (!r.is_zero()) terms_.emplace_back(0, std::move(r));
}

CycloNum CycloNum::root_of_unity(std::uint32_t m, std::int64_t e) {
  if (m == 0) throw std::invalid_argument("conductor must be positive");
  if (m % 4 == 2) {
    // Q(zeta_2h) = Q(zeta_h) for odd h, with zeta_2h = -zeta_h^((h+1)/2).
    const std::uint32_t h = m / 2;
    const std::int64_t r = ((e % m) + m) % m;
    CycloNum z = root_of_unity(h, r * ((h + 1) / 2));
    return (r % 2 == 1) ? -z : z;
  }
  const CycloField& f = CycloField::get(m);
  std::int64_t r = e % static_cast<std::int64_t>(m);
  if (r < 0) r += m;
  std::vector<Term> terms;
  for (const auto& [k, v] : f.power(static_cast<std::uint32_t>(r))) terms.emplace_back(k, Rational(v));
  return CycloNum(&f, std::move(terms));
}

CycloNum CycloNum::cos_2pi(std::uint32_t m, std::int64_t e) {
  CycloNum c = root_of_unity(m, e) + root_of_unity(m, -e);
  c *= Rational(1, 2);
  return c;
}

CycloNum CycloNum::from_coeffs(std::uint32_t m, const std::vector<Rational>& coeffs) {
  const CycloField& f = CycloField::get(m);
  if (coeffs.size() != f.degree())
    throw std::invalid_argument("expected " + std::to_string(f.degree()) + " coefficients for conductor " +
                                std::to_string(m));
  if (m % 4 == 2) {
    CycloNum out;
    for (std::uint32_t k = 0; k < coeffs.size(); ++k)
      if (!coeffs[k].is_zero()) out += root_of_unity(m, k) * CycloNum(coeffs[k]);
    return out;
  }
  std::vector<Term> terms;
  for (std::uint32_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) terms.emplace_back(k, coeffs[k]);
  return CycloNum(&f, std::move(terms));
}

std::uint32_t CycloNum::conductor() const { return field_->m(); }

std::vector<Rational> CycloNum::coeffs() const {
  std::vector<Rational> out(field_->degree());
  for (const auto& [k, c] : terms_) out[k] = c;
  return out;
}

bool CycloNum::is_one() const {
  return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second.is_one();
}

bool CycloNum::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

Rational CycloNum::to_rational() const {
  if (!is_rational()) throw std::domain_error("cyclotomic number is not rational: " + str());
  return terms_.empty() ? Rational(0) : terms_[0].second;
}

bool CycloNum::is_real() const { return *this == conj(); }

CycloNum CycloNum::lift(std::uint32_t M) const {
  if (M % 4 == 2) M /= 2;
  const std::uint32_t m = conductor();
  if (M == m) return *this;
  if (M % m != 0) throw std::invalid_argument("cannot lift conductor " + std::to_string(m) + " to " + std::to_string(M));
  const CycloField& F = CycloField::get(M);
  if (is_rational()) return CycloNum(&F, terms_);
  const std::uint32_t factor = M / m;
  std::vector<Rational> dense(F.degree());
  for (const auto& [k, c] : terms_) {
    for (const auto& [j, v] : F.power(k * factor)) add_scaled(dense[j], c, v);
  }
  return CycloNum(&F, from_dense(dense));
}

CycloNum CycloNum::conj() const {
  if (is_rational()) return *this;
  const std::uint32_t m = conductor();
  std::vector<Term> parts;
  for (const auto& [k, c] : terms_) {
    const std::uint32_t e = (m - k) % m;
    for (const auto& [j, v] : field_->power(e)) {
      parts.emplace_back(j, v == 1 ? c : c * Rational(v));
    }
  }
  return CycloNum(field_, collapse(parts));
}

std::complex<long double> CycloNum::embed_long() const {
  const long double m = conductor();
  std::complex<long double> acc(0, 0);
  for (const auto& [k, c] : terms_) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / m;
    const long double cv = static_cast<long double>(c.to_double());
    acc += std::complex<long double>(cv * std::cos(angle), cv * std::sin(angle));
  }
  return acc;
}

std::complex<double> CycloNum::embed() const {
  const auto v = embed_long();
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

CycloNum CycloNum::operator-() const {
  CycloNum r(*this);
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& rhs) {
  if (rhs.terms_.empty()) return *this;
  if (field_ != rhs.field_) {
    if (rhs.is_rational() && conductor() % rhs.conductor() == 0) {
      // rationals embed into every field without a table lookup
      CycloNum r(field_, rhs.terms_);
      return *this += r;
    }
    const std::uint32_t M = CycloField::lcm_conductor(conductor(), rhs.conductor());
    *this = lift(M);
    return *this += rhs.lift(M);
  }
  if (terms_.empty()) {
    terms_ = rhs.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      Rational s = std::move(a->second);
      s += b->second;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& rhs) { return *this += -rhs; }

CycloNum& CycloNum::operator*=(const Rational& rhs) {
  if (rhs.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= rhs;
  return *this;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  if (a.is_zero() || b.is_zero()) return CycloNum();
  if (b.is_rational()) {
    CycloNum r(a);
    r *= b.terms_[0].second;
    return r;
  }
  if (a.is_rational()) {
    CycloNum r(b);
    r *= a.terms_[0].second;
    return r;
  }
  if (a.field_ != b.field_) {
    const std::uint32_t M = CycloField::lcm_conductor(a.conductor(), b.conductor());
    return a.lift(M) * b.lift(M);
  }
  const CycloField& f = *a.field_;
  const std::uint32_t m = f.m();
  const std::size_t work = a.terms_.size() * b.terms_.size();
  if (work * 4 >= f.degree()) {
    std::vector<CycloNum::Term> fast;
    if (integer_product(f, a.terms_, b.terms_, fast)) return CycloNum(&f, std::move(fast));
    std::vector<Rational> dense(f.degree());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        const Rational c = ca * cb;
        for (const auto& [k, v] : f.power((ea + eb) % m)) add_scaled(dense[k], c, v);
      }
    }
    return CycloNum(&f, from_dense(dense));
  }
  std::vector<CycloNum::Term> parts;
  parts.reserve(work * 2);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Rational c = ca * cb;
      const auto& pw = f.power((ea + eb) % m);
      if (pw.size() == 1 && pw[0].second == 1) {
        parts.emplace_back(pw[0].first, std::move(c));
      } else {
        for (const auto& [k, v] : pw) parts.emplace_back(k, v == 1 ? c : c * Rational(v));
      }
    }
  }
  return CycloNum(&f, collapse(parts));
}

CycloNum& CycloNum::operator*=(const CycloNum& rhs) {
  *this = *this * rhs;
  return *this;
}

void CycloNum::add_product(const CycloNum& a, const CycloNum& b) {
  if (a.is_zero() || b.is_zero()) return;
  *this += a * b;
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.field_ == b.field_) return a.terms_ == b.terms_;
  if (a.is_rational() && b.is_rational()) return a.terms_ == b.terms_;
  const std::uint32_t M = CycloField::lcm_conductor(a.conductor(), b.conductor());
  return a.lift(M).terms_ == b.lift(M).terms_;
}

namespace {

using QPoly = std::vector<Rational>;  // lowest degree first

void qtrim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Polynomial long division over Q: returns quotient, num becomes remainder.
QPoly qdivmod(QPoly& num, const QPoly& den) {
  qtrim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {};
  QPoly q(num.size() - dd);
  const Rational lead_inv = den.back().inverse();
  for (std::size_t i = num.size(); i-- > dd;) {
    if (num[i].is_zero()) continue;
    Rational c = num[i] * lead_inv;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    q[i - dd] = std::move(c);
  }
  qtrim(num);
  return q;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qtrim(r);
  return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qtrim(a);
  return a;
}

}  // namespace

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
  if (is_rational()) return CycloNum(terms_[0].second.inverse()).lift(conductor());
  if (terms_.size() == 1) {
    CycloNum r = root_of_unity(conductor(), -static_cast<std::int64_t>(terms_[0].first));
    r *= terms_[0].second.inverse();
    return r;
  }
  // Extended Euclid: find s with s * a = 1 mod Phi_m.
  QPoly phi;
  for (auto v : field_->cyclotomic_polynomial()) phi.emplace_back(v);
  QPoly a = coeffs();
  qtrim(a);
  QPoly r0 = phi, r1 = a;
  QPoly s0, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    if (r1.empty()) throw std::logic_error("non-invertible element modulo cyclotomic polynomial");
    QPoly rem = r0;
    QPoly q = qdivmod(rem, r1);
    QPoly s2 = qsub(s0, qmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const Rational c = r1[0].inverse();
  QPoly rem = s1;
  qdivmod(rem, phi);
  rem.resize(field_->degree());
  for (auto& v : rem) v *= c;
  return from_coeffs(conductor(), rem);
}

CycloNum& CycloNum::operator/=(const CycloNum& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero in cyclotomic field");
  if (rhs.is_rational()) return *this *= rhs.terms_[0].second.inverse();
  return *this *= rhs.inverse();
}

CycloNum CycloNum::pow(unsigned e) const {
  CycloNum result = CycloNum(1).lift(conductor());
  CycloNum base(*this);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

std::string CycloNum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string cs = c.pretty();
    const bool neg = c.sign() < 0;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (neg) cs = (-c).pretty();
    if (k == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << "z" << conductor();
      if (k != 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

}  // namespace fqg
