#include <doctest.h>

#include <bit>
#include <numbers>
#include <random>

#include "fqg/moments.hpp"
#include "oracles.hpp"

using namespace fqg;

namespace {

using cplx = std::complex<double>;

cplx ipow(cplx z, unsigned k) {
  cplx r = 1;
  while (k--) r *= z;
  return r;
}

AlgElement power_char(const Corep& X, unsigned k) { return corep_trace(corep_power(X, k)); }

std::vector<AlgElement> word_factors(const AlgElement& x, const MomentWord& w) {
  std::vector<AlgElement> f;
  for (bool s : w) f.push_back(s ? x.star() : x);
  return f;
}

// Moment E[Z^k conj(Z)^l] by quadrature; laws given by a sampler over angles.
template <class F>
cplx grid_moment(unsigned k, unsigned l, int dims, F&& point) {
  constexpr int N = 96;
  cplx acc = 0;
  if (dims == 1) {
    for (int i = 0; i < N; ++i) {
      const cplx z = point((i + 0.5) * std::numbers::pi / N, 0.0);
      acc += ipow(z, k) * ipow(std::conj(z), l);
    }
    return acc / double(N);
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const cplx z = point(2 * std::numbers::pi * i / N, 2 * std::numbers::pi * j / N);
      acc += ipow(z, k) * ipow(std::conj(z), l);
    }
  return acc / double(N * N);
}

// Direct count behind the dual moments: h of a product of normalized-free
// characters evaluated through the regular representation.
cplx dual_moment_oracle(const QuantumGroup& D, const std::vector<unsigned>& ks) {
  const Corep X = dual_fundamental(D);
  std::vector<AlgElement> f;
  for (unsigned k : ks) f.push_back(power_char(X, k));
  return oracle::haar_word_regular(D, f);
}

}  // namespace

TEST_CASE("word notation") {
  CHECK(word_str({}) == "1");
  CHECK(word_str({false, true, false}) == "aa*a");
  CHECK(parse_word("aa*a") == MomentWord{false, true, false});
  CHECK(parse_word("1").empty());
  CHECK_THROWS_AS(parse_word("ab"), std::invalid_argument);
  CHECK(word_adjoint(parse_word("aaa*")) == parse_word("aa*a*"));
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    MomentWord w(rng() % 7);
    for (auto&& b : w) b = rng() & 1;
    CHECK(parse_word(word_str(w)) == w);
    CHECK(word_adjoint(word_adjoint(w)) == w);
  }
}

TEST_CASE("set partitions follow the Bell numbers") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (std::size_t r = 0; r <= 6; ++r) CHECK(set_partitions(r).size() == bell[r]);
}

TEST_CASE("cumulants and moments invert each other") {
  std::mt19937_64 rng(12);
  for (std::size_t r = 1; r <= 5; ++r) {
    std::vector<CycloNum> m(1u << r);
    m[0] = CycloNum(1);
    for (std::size_t s = 1; s < m.size(); ++s) m[s] = CycloNum(Rational(static_cast<std::int64_t>(rng() % 19) - 9, 1 + rng() % 4));
    // Cumulant of the sub-family picked by mask, from the moments of that sub-family.
    auto sub_cumulant = [&](unsigned mask) {
      std::vector<unsigned> bits;
      for (unsigned b = 0; b < r; ++b)
        if (mask >> b & 1) bits.push_back(b);
      return cumulant_from_moments(bits.size(), [&](unsigned sm) {
        unsigned full = 0;
        for (std::size_t b = 0; b < bits.size(); ++b)
          if (sm >> b & 1) full |= 1u << bits[b];
        return m[full];
      });
    };
    CHECK(moment_from_cumulants(r, sub_cumulant) == m.back());
  }
  // A constant has no cumulants beyond the first.
  CHECK(cumulant_from_moments(3, [](unsigned mask) { return CycloNum(Rational(1 << std::popcount(mask), 1)); })
            .is_zero());
}

TEST_CASE("exact moments agree with the floating route") {
  const QuantumGroup kp = build_kp();
  const AlgElement x = power_char(kp_fundamental(kp, 1, 1), 1);
  const AlgElement y = AlgElement::basis(kp.algebra(), 5) + AlgElement::basis(kp.algebra(), 0);  // E12 + e1
  for (const AlgElement& a : {x, y}) {
    const MomentTable t = star_moments(kp, a, 5);
    // Normal tables keep one word per letter count.
    CHECK(t.entries.size() == (t.normal ? 20u : 62u));
    for (const auto& e : t.entries) CHECK(std::abs(e.value.embed() - oracle::haar_word(kp, word_factors(a, e.word))) < 1e-9);
  }
  CHECK(star_moments(kp, x, 4).normal);
  CHECK_FALSE(star_moments(kp, y, 2).normal);
  CHECK_THROWS(star_moments(kp, x, 17));
  const QuantumGroup G = build_sekine(5);
  const AlgElement z = sekine_two_dim(G, 1, 2)(0, 1);
  for (const auto& e : star_moments(G, z, 4).entries)
    CHECK(std::abs(e.value.embed() - oracle::haar_word(G, word_factors(z, e.word))) < 1e-9);
  CHECK(haar_product(G, z, z.star()) == haar_moment(G, {z, z.star()}));
}

TEST_CASE("Kac-Paljutkin character laws") {
  const QuantumGroup kp = build_kp();
  const Corep X = kp_fundamental(kp, 1, 1);
  for (unsigned k = 1; k <= 8; ++k) {
    CAPTURE(k);
    const AlgElement c = power_char(X, k);
    CHECK(c == closed_form_kp_char(kp, k));
    const RefDist law = RefDist::kp_law(kp_law_index(k));
    for (unsigned r = 0; r <= 6; ++r) {
      const cplx h = oracle::haar_word(kp, std::vector<AlgElement>(r, c));
      CHECK(std::abs(h - refdist_moment(law, r, 0).embed()) < 1e-9);
    }
  }
  CHECK(kp_law_index(1) == 1);
  CHECK(kp_law_index(2) == 2);
  CHECK(kp_law_index(4) == 4);
  CHECK(kp_law_index(8) == 0);
  // Joint moments by the case formula.
  for (unsigned a = 1; a <= 8; ++a)
    for (unsigned b = a; b <= 8; ++b)
      for (unsigned c = b; c <= 8; ++c) {
        const cplx h = oracle::haar_word(kp, {power_char(X, a), power_char(X, b), power_char(X, c)});
        CHECK(std::abs(h - closed_form_kp_joint({a, b, c}).to_double()) < 1e-9);
      }
}

TEST_CASE("Sekine character moments by closed form") {
  for (Index n = 3; n <= 7; ++n) {
    const QuantumGroup G = build_sekine(n);
    for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u)
      for (std::int64_t v = 1; v <= sekine_v_max(n); ++v) {
        const Corep X = sekine_two_dim(G, u, v);
        for (unsigned k = 1; k <= 4; ++k) {
          const AlgElement c = power_char(X, k);
          CHECK(c == closed_form_sekine_char(G, u, v, k));
          for (unsigned r1 = 0; r1 <= 3; ++r1)
            for (unsigned rs = 0; r1 + rs <= 4; ++rs) {
              std::vector<AlgElement> f(r1, c);
              f.insert(f.end(), rs, c.star());
              CHECK(std::abs(oracle::haar_word(G, f) -
                             closed_form_sekine_char_moment(n, u, v, k, r1, rs).embed()) < 1e-9);
            }
        }
      }
  }
}

TEST_CASE("block coefficients") {
  // The rules agree when u = v and differ otherwise.
  CHECK(sekine_block_coefficient(7, 2, 2, 2) == sekine_block_coefficient(7, 2, 2, 2, BlockCoefficient::kAsPrinted));
  CHECK_FALSE(sekine_block_coefficient(7, 1, 2, 2) ==
              sekine_block_coefficient(7, 1, 2, 2, BlockCoefficient::kAsPrinted));
  CHECK(std::abs(sekine_block_coefficient(7, 1, 2, 2).embed() - 2 * std::cos(4 * std::numbers::pi / 7)) < 1e-12);
}

TEST_CASE("dual moments by direct count") {
  for (Index n : {3, 4, 5, 6}) {
    const QuantumGroup D = dual(build_sekine(n));
    for (unsigned k = 1; k <= 4; ++k) CHECK(corep_trace(corep_power(dual_fundamental(D), k)) == dual_trace_formula(D, k));
    for (unsigned a = 1; a <= 4; ++a)
      for (unsigned b = a; b <= 4; ++b) {
        CAPTURE(n);
        CAPTURE(a);
        CAPTURE(b);
        const cplx h = dual_moment_oracle(D, {a, b});
        CHECK(std::abs(h - closed_form_dual_moments_derived(n, {a, b}).to_double()) < 1e-8);
        if ((a + b) % 2 || a % 2) CHECK(closed_form_dual_moments(n, {a, b}) == closed_form_dual_moments_derived(n, {a, b}));
      }
    const cplx h3 = dual_moment_oracle(D, {1, 2, 3});
    CHECK(std::abs(h3 - closed_form_dual_moments_derived(n, {1, 2, 3}).to_double()) < 1e-8);
  }
  // Both even: the printed gcd form undercounts.
  CHECK(closed_form_dual_moments(4, {2, 2}) == Rational(2));
  CHECK(closed_form_dual_moments_derived(4, {2, 2}) == Rational(8));
}

TEST_CASE("reference laws against quadrature") {
  const RefDist arc = RefDist::arcsine();
  const RefDist carc = RefDist::c_arcsine(Rational(3, 2));
  const RefDist circ = RefDist::uniform_circle(Rational(2, 3));
  for (unsigned k = 0; k <= 8; ++k)
    for (unsigned l = 0; l <= 8; ++l) {
      const cplx a = grid_moment(k, l, 1, [](double t, double) { return cplx(2 * std::cos(t), 0); });
      CHECK(std::abs(a - refdist_moment(arc, k, l).embed()) < 1e-8);
      const cplx c = grid_moment(k, l, 2, [](double s, double t) { return 0.75 * (std::polar(1.0, s) + std::polar(1.0, t)); });
      CHECK(std::abs(c - refdist_moment(carc, k, l).embed()) < 1e-8);
      const cplx u = grid_moment(k, l, 2, [](double s, double) { return std::polar(2.0 / 3.0, s); });
      CHECK(std::abs(u - refdist_moment(circ, k, l).embed()) < 1e-8);
    }
  const RefDist mix = RefDist::mixture({{Rational(1, 4), RefDist::dirac(CycloNum(2))}, {Rational(3, 4), arc}});
  CHECK(refdist_moment(mix, 2, 0) == CycloNum(Rational(1) + Rational(3, 2)));
}

TEST_CASE("pair cumulants by formula and directly") {
  for (Index n : {7, 9}) {
    const QuantumGroup G = build_sekine(n);
    for (std::int64_t a = 0; a < 3; ++a)
      for (std::int64_t c = 0; c < 3; ++c)
        for (std::int64_t k : {1, 2})
          for (std::int64_t l : {1, 2})
            for (bool star : {false, true}) {
              const PairSpec x{a, 1, k, false}, y{c, 2, l, star};
              const IndependenceReport r = pairwise_independence(G, x, y);
              CHECK(r.cumulant == pair_cumulant_formula(n, x, y));
              CHECK(r.cumulant_formula == r.cumulant);
            }
  }
}

TEST_CASE("noncommuting characters are rejected by cumulants") {
  CHECK(noncommuting_character_pairs(build_sekine(5)).empty());
  const QuantumGroup G = build_sekine(4);
  const auto pairs = noncommuting_character_pairs(G);
  REQUIRE_FALSE(pairs.empty());
  const auto& [p, q] = pairs.front();
  CHECK((p.starts_with("sigma") || q.starts_with("sigma")));
  const auto irreps = irrep_catalog(G).irreps;
  std::vector<AlgElement> chars;
  for (const auto& U : irreps)
    if (U.label == p || U.label == q) chars.push_back(corep_trace(U));
  REQUIRE(chars.size() == 2);
  CHECK_THROWS_AS(cumulant(G, chars), CommutationError);
}

TEST_CASE("Gelfand points for n = 3") {
  const QuantumGroup G = build_sekine(3);
  const OmegaSpace om = omega_space(G);
  CHECK(om.idempotents_ok);
  CHECK(om.total_mass == Rational(1));
  REQUIRE(om.points.size() == 9);
  std::vector<Rational> plus, minus;
  for (const auto& pt : om.points) (pt.b == 1 ? plus : minus).push_back(pt.weight);
  CHECK(plus.size() == 6);
  CHECK(std::count(plus.begin(), plus.end(), Rational(1, 18)) == 3);
  CHECK(std::count(plus.begin(), plus.end(), Rational(1, 9)) == 3);
  for (const auto& w : minus) CHECK(w == Rational(1, 6));
  CHECK(omega_uniform_weight(3) == Rational(1, 18));
  // Weights are the Haar values of the idempotents.
  for (const auto& pt : om.points) CHECK(std::abs(oracle::haar_word(G, {pt.idempotent}) - pt.weight.to_double()) < 1e-12);
  CHECK(omega_reproduce(G, om, 6).mismatches == 0);
  for (const auto& s : omega_spectra(G)) CHECK(s.ok);
}

TEST_CASE("second Chebyshev character") {
  const QuantumGroup G = build_sekine(5);
  const AlgElement x = corep_trace(sekine_two_dim(G, 0, 1));
  const AlgElement rho = sekine_one_dim(G, 0, 1, OneDimKind::kRho) + sekine_one_dim(G, 0, -1, OneDimKind::kRho);
  CHECK(corep_trace(sekine_two_dim(G, 0, 2)) == x * x - rho);
  const ChebyshevDecomposition d = chebyshev_decompose(G, 0, 2);
  CHECK(d.verified_plus);
  CHECK(d.verified_minus);
  CHECK(d.poly == std::vector<std::int64_t>{-2, 0, 1});
  CHECK(d.rho_constant == -1);
}

TEST_CASE("moment tables serialize deterministically") {
  const QuantumGroup kp = build_kp();
  const AlgElement x = power_char(kp_fundamental(kp, 1, 1), 1);
  const MomentTable t = star_moments(kp, x, 4, "chi(X)");
  const json j = moment_table_to_json(t);
  CHECK(j.dump() == moment_table_to_json(star_moments(kp, x, 4, "chi(X)")).dump());
  CHECK(j["element"] == "chi(X)");
  CHECK(j["max_order"] == 4);
  CHECK(moment_table_to_csv(t).starts_with("word,value\n"));
  REQUIRE(t.lookup(2, 0).has_value());
  CHECK(*t.lookup(2, 0) == CycloNum(1));
  CHECK(*t.lookup(parse_word("a*a")) == *t.lookup(1, 1));
}
