#include "fqg/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fqg/moments.hpp"

namespace fqg::suites {

namespace {

using Clock = std::chrono::steady_clock;

class Timed {
 public:
  Timed(Outcome& o, int criterion, std::string title, double budget) : o_(o), t0_(Clock::now()) {
    o_.criterion = criterion;
    o_.title = std::move(title);
    o_.budget = budget;
  }
  ~Timed() { o_.seconds = std::chrono::duration<double>(Clock::now() - t0_).count(); }

 private:
  Outcome& o_;
  Clock::time_point t0_;
};

std::string counts(std::size_t bad, std::size_t total) { return std::to_string(bad) + "/" + std::to_string(total); }

template <class... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

AlgElement sekine_char(const QuantumGroup& G, std::int64_t u, std::int64_t v, unsigned k) {
  return corep_trace(corep_power(sekine_two_dim(G, u, v), k));
}

RefDist sekine_limit_law(std::int64_t u, std::int64_t k) {
  const Rational h(1, 2);
  if (k % 2 == 1) {
    if (u == 0) return RefDist::mixture({{h, RefDist::dirac(0)}, {h, RefDist::arcsine()}});
    return RefDist::mixture({{h, RefDist::dirac(0)}, {h, RefDist::c_arcsine(2)}});
  }
  if (u == 0) return RefDist::mixture({{h, RefDist::dirac(2)}, {h, RefDist::arcsine()}});
  return RefDist::mixture({{h, RefDist::uniform_circle(2)}, {h, RefDist::c_arcsine(2)}});
}

std::pair<unsigned, unsigned> letter_counts(const MomentWord& w) {
  unsigned r1 = 0, rs = 0;
  for (bool s : w) (s ? rs : r1)++;
  return {r1, rs};
}


}  // namespace

// ---------------------------------------------------------------------------

Outcome axioms() {
  Outcome o;
  {
    Timed t(o, 1, "Hopf, Haar and cancellation axioms", 60);
    std::size_t groups = 0, failed = 0;
    auto record = [&](const Report& r) {
      if (!r.passed()) {
        ++failed;
        o.details.push_back(r.str());
      }
    };
    std::vector<QuantumGroup> all;
    all.push_back(build_kp());
    for (Index n = 2; n <= 7; ++n) all.push_back(build_sekine(n));
    for (Index n = 2; n <= 6; ++n) all.push_back(dual(build_sekine(n)));
    for (const auto& G : all) {
      ++groups;
      record(verify_hopf(G));
      record(verify_haar(G));
    }
    std::size_t canc = 0;
    for (const auto* G : {&all[0], &all[1], &all[3]}) {
      const Report r = verify_cancellation(*G);
      ++canc;
      record(r);
      for (const auto& c : r.checks)
        if (c.skipped) {
          ++failed;
          o.details.push_back(G->name() + ": cancellation skipped");
        }
    }
    o.passed = failed == 0;
    o.summary = cat(groups, " groups Hopf+Haar exact, ", canc, " cancellation ranks; failing reports ", failed);
  }
  return o;
}

Outcome completeness() {
  Outcome o;
  {
    Timed t(o, 2, "Irreducible catalogs complete", 30);
    std::vector<QuantumGroup> all;
    all.push_back(build_kp());
    for (Index n : {5u, 4u, 6u}) all.push_back(build_sekine(n));
    for (Index n = 2; n <= 5; ++n) all.push_back(dual(build_sekine(n)));
    bool ok = true;
    std::string line;
    for (const auto& G : all) {
      const IrrepCatalog c = irrep_catalog(G);
      std::size_t one = 0, rest = 0;
      for (const auto& U : c.irreps) (U.d == 1 ? one : rest) += U.d * U.d;
      const Report r = verify_complete(G, c);
      ok = ok && r.passed();
      if (!r.passed()) o.details.push_back(r.str());
      line += cat(line.empty() ? "" : ", ", G.name(), " ", one, "+", rest, "=", G.dim());
    }
    o.passed = ok;
    o.summary = line;
  }
  return o;
}

Outcome kp_power_laws() {
  Outcome o;
  {
    Timed t(o, 3, "Kac-Paljutkin power laws", 0);
    const QuantumGroup kp = build_kp();
    std::size_t tables = 0, bad_tables = 0, bad_closed = 0;
    for (int a : {1, -1})
      for (int j = 0; j < 8; ++j) {
        const Corep X = kp_fundamental(kp, a, j);
        Corep P = identity_grid(kp.algebra(), 2);
        for (unsigned k = 1; k <= 16; ++k) {
          P = grid_multiply(P, X);
          const AlgElement c = corep_trace(P);
          ++tables;
          const MomentTable tab = star_moments(kp, c, 12);
          const MatchReport m = match_distribution(tab, RefDist::kp_law(kp_law_index(k)), 12, 0.0);
          if (!m.matched) {
            ++bad_tables;
            o.details.push_back(cat("a=", a, " j=", j, " k=", k, ": ", m.str()));
          }
          if (!(c == closed_form_kp_char(kp, k))) {
            ++bad_closed;
            o.details.push_back(cat("a=", a, " j=", j, " k=", k, ": closed-form character differs"));
          }
        }
      }
    o.passed = bad_tables == 0 && bad_closed == 0;
    o.summary = cat("moment tables off-law ", counts(bad_tables, tables), ", closed-form characters differing ",
                    counts(bad_closed, tables));
  }
  return o;
}

Outcome kp_independence() {
  Outcome o;
  {
    Timed t(o, 4, "Kac-Paljutkin joint moments and cumulants", 0);
    const QuantumGroup kp = build_kp();
    const Corep X = kp_fundamental(kp, 1, 1);
    std::vector<AlgElement> ch;
    for (unsigned k = 0; k <= 9; ++k) ch.push_back(corep_trace(corep_power(X, k)));

    std::size_t total = 0, bad = 0, cum_total = 0, cum_bad = 0, distinct_total = 0, distinct_bad = 0;
    std::size_t product_bad = 0;
    const RefDist mu1 = RefDist::kp_law(1);
    std::vector<unsigned> ks;
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
      if (ks.size() == r) {
        std::vector<AlgElement> els, even_part;
        bool has_const = false, has_odd = false, has_even = false;
        std::map<int, int> classes;
        unsigned n_const = 0, n_odd = 0;
        for (unsigned k : ks) {
          els.push_back(ch[k]);
          const int law = kp_law_index(k);
          ++classes[law];
          has_const = has_const || law == 0;
          has_odd = has_odd || law == 1;
          has_even = has_even || law == 2 || law == 4;
          if (law == 0) ++n_const;
          if (law == 1) ++n_odd;
          if (law == 2 || law == 4) even_part.push_back(ch[k]);
        }
        ++total;
        const CycloNum h = joint_moment(kp, els);
        // Factorized statement: 2^#0 E[Z_1^#1] h(remaining powers).
        CycloNum product = refdist_moment(mu1, n_odd, 0) * joint_moment(kp, even_part);
        product *= Rational(std::int64_t{1} << n_const);
        if (!(h == product)) ++product_bad;
        if (!(h == CycloNum(closed_form_kp_joint(ks)))) {
          ++bad;
          if (o.details.size() < 20) {
            std::string s;
            for (unsigned k : ks) s += std::to_string(k) + " ";
            o.details.push_back("joint moment differs for powers " + s);
          }
        }
        // Class-0 powers are constants; class-1 powers are independent of classes 2 and 4.
        if ((r >= 2 && has_const) || (has_odd && has_even)) {
          ++cum_total;
          const bool zero = cumulant(kp, els).is_zero();
          if (!zero) ++cum_bad;
          if (classes.size() == r) {
            ++distinct_total;
            if (!zero) ++distinct_bad;
          }
        }
        return;
      }
      for (unsigned k = 0; k <= 9; ++k) {
        ks.push_back(k);
        rec(r);
        ks.pop_back();
      }
    };
    for (std::size_t r = 1; r <= 4; ++r) rec(r);
    const CycloNum k24 = cumulant(kp, {ch[2], ch[4]});
    const CycloNum k112 = cumulant(kp, {ch[1], ch[1], ch[2]});
    if (!k112.is_zero()) o.details.push_back("kappa(1,1,2) = " + k112.str());
    o.passed = bad == 0 && cum_bad == 0 && k24 == CycloNum(2);
    o.summary = cat("joint moments differing ", counts(bad, total), " (factorized statement differing ",
                    counts(product_bad, total), "), kappa(2,4) = ", k24.str(),
                    ", nonzero mixed cumulants with a power-0 or power-1 class ", counts(cum_bad, cum_total),
                    " (distinct classes only ", counts(distinct_bad, distinct_total), ")");
  }
  return o;
}

Outcome sekine_characters() {
  Outcome o;
  {
    Timed t(o, 5, "Sekine character closed form and diagonal even powers", 0);
    std::size_t total = 0, bad_printed = 0, bad_derived = 0, nondiag = 0;
    for (Index n = 2; n <= 9; ++n) {
      const QuantumGroup G = build_sekine(n);
      for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u)
        for (std::int64_t v = 1; v <= sekine_v_max(n); ++v) {
          const Corep X = sekine_two_dim(G, u, v);
          Corep P = identity_grid(G.algebra(), 2);
          for (std::int64_t k = 1; k <= 10; ++k) {
            P = grid_multiply(P, X);
            const AlgElement tr = corep_trace(P);
            ++total;
            if (!(tr == closed_form_sekine_char(G, u, v, k, BlockCoefficient::kAsPrinted))) {
              ++bad_printed;
              if (o.details.size() < 5)
                o.details.push_back(cat("n=", n, " u=", u, " v=", v, " k=", k,
                                        ": block coefficient 2cos(k v^2 pi/n) disagrees with the trace"));
            }
            if (!(tr == closed_form_sekine_char(G, u, v, k))) ++bad_derived;
            if (k % 2 == 0 && !(P(0, 1).is_zero() && P(1, 0).is_zero())) ++nondiag;
          }
        }
    }
    o.passed = bad_printed == 0 && nondiag == 0;
    o.summary = cat("printed closed form differing ", counts(bad_printed, total),
                    "; with block coefficient 2cos(k u v pi/n) ", counts(bad_derived, total),
                    "; non-diagonal even powers ", nondiag);
  }
  return o;
}

Outcome character_spaces() {
  Outcome o;
  {
    Timed t(o, 6, "Character space decomposition and Chebyshev identity", 0);
    std::size_t total = 0, bad_printed = 0, bad_derived = 0, cheb_total = 0, cheb_bad = 0;
    for (Index n = 2; n <= 9; ++n) {
      const QuantumGroup G = build_sekine(n);
      for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u)
        for (std::int64_t v = 1; v <= sekine_v_max(n); ++v) {
          if (n <= 7)
            for (std::int64_t k = 1; k <= 8; ++k) {
              const SpaceDecomposition d = propspace_decompose(G, u, v, k);
              ++total;
              if (!d.verified_printed) {
                ++bad_printed;
                if (o.details.size() < 5) o.details.push_back(cat("n=", n, " stated combination fails: ", d.str()));
              }
              if (!d.verified) ++bad_derived;
            }
          const ChebyshevDecomposition c = chebyshev_decompose(G, u, v);
          ++cheb_total;
          if (!(c.verified_plus && c.verified_minus)) {
            ++cheb_bad;
            o.details.push_back(cat("n=", n, " ", c.str()));
          }
        }
    }
    o.passed = bad_printed == 0 && bad_derived == 0 && cheb_bad == 0;
    o.summary = cat("stated combinations failing ", counts(bad_printed, total),
                    "; with corrected block coefficient and sign (-1)^(au) ", counts(bad_derived, total),
                    "; Chebyshev identities failing ", counts(cheb_bad, cheb_total));
  }
  return o;
}

Outcome gelfand_space() {
  Outcome o;
  {
    Timed t(o, 7, "Gelfand points and weights of the character subalgebra", 0);
    bool ok = true;
    std::string uniform;
    for (Index n = 3; n <= 9; ++n) {
      const QuantumGroup G = build_sekine(n);
      const OmegaSpace om = omega_space(G);
      const OmegaCheck ch = omega_reproduce(G, om, 8);
      const auto spectra = omega_spectra(G);
      bool spectra_ok = true;
      for (const auto& s : spectra) spectra_ok = spectra_ok && s.ok;
      const bool good = om.idempotents_ok && om.total_mass == Rational(1) && ch.mismatches == 0 && spectra_ok;
      ok = ok && good;
      o.details.push_back(cat("n=", n, ": ", om.points.size(), " points, mass ", om.total_mass.str(), ", Haar mismatches ",
                              counts(ch.mismatches, ch.monomials.size()), ", spectra ", spectra_ok ? "ok" : "off",
                              ", uniform-weight mismatches ", counts(ch.uniform_mismatches, ch.monomials.size())));
      if (n == 3)
        for (const auto& m : ch.monomials)
          if (m.p == 0 && m.m == 0 && m.q == 2)
            uniform = cat("n=3 h(chi^2) = ", m.haar.str(), " vs uniform-weight sum ", m.uniform_sum.str());
    }
    o.passed = ok;
    o.summary = cat("idempotent weights reproduce Haar for n=3..9: ", ok ? "yes" : "no", "; ", uniform);
  }
  return o;
}

Outcome sekine_limits() {
  Outcome o;
  {
    Timed t(o, 8, "Sekine limit laws at n=101 and finite-n moment formulas", 120);
    const Index big = 101;
    const QuantumGroup G = build_sekine(big);
    std::size_t off_law = 0, closed_bad = 0, families = 0;
    for (std::int64_t u = 0; u <= 1; ++u)
      for (std::int64_t v = 1; v <= 2; ++v)
        for (std::int64_t k = 1; k <= 4; ++k) {
          ++families;
          FamilySpec f;
          f.u = u;
          f.v = v;
          f.k = k;
          const AlgElement a = family_element(G, f);
          const MomentTable tab = star_moments(G, a, 10, f.str());
          const MatchReport m = match_distribution(tab, sekine_limit_law(u, k), 10, 0.0);
          if (!m.matched) {
            ++off_law;
            o.details.push_back("n=101 " + m.str());
          }
          for (const auto& e : tab.entries) {
            const auto [r1, rs] = letter_counts(e.word);
            if (!(e.value == closed_form_sekine_char_moment(big, u, v, k, r1, rs))) ++closed_bad;
          }
        }
    // Finite-n formulas against direct tables, n <= 9.
    std::size_t words = 0, bad_printed = 0, bad_derived = 0;
    for (Index n = 3; n <= 9; ++n) {
      const QuantumGroup S = build_sekine(n);
      for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u)
        for (std::int64_t v = 1; v <= sekine_v_max(n); ++v)
          for (unsigned k = 1; k <= 4; ++k) {
            const MomentTable tab = star_moments(S, sekine_char(S, u, v, k), 6);
            for (const auto& e : tab.entries) {
              const auto [r1, rs] = letter_counts(e.word);
              ++words;
              if (!(e.value == closed_form_sekine_char_moment(n, u, v, k, r1, rs, BlockCoefficient::kAsPrinted)))
                ++bad_printed;
              if (!(e.value == closed_form_sekine_char_moment(n, u, v, k, r1, rs))) ++bad_derived;
            }
          }
    }
    o.passed = off_law == 0 && closed_bad == 0 && bad_printed == 0;
    o.summary = cat("n=101 families off the limit law ", counts(off_law, families), " (closed form vs direct differing ",
                    closed_bad, "); n<=9 printed finite-n formula differing ", counts(bad_printed, words),
                    ", with block coefficient 2cos(k u v pi/n) ", counts(bad_derived, words));
  }
  return o;
}

Outcome dual_group() {
  Outcome o;
  {
    Timed t(o, 9, "Dual Sekine traces, joint moments and normalized laws", 0);
    std::size_t tr_total = 0, tr_bad = 0, jm_total = 0, jm_bad = 0, jm_derived_bad = 0;
    std::size_t law_total = 0, law_bad = 0, law_derived_bad = 0;
    for (Index n = 2; n <= 6; ++n) {
      const QuantumGroup D = dual(build_sekine(n));
      const Corep F = dual_fundamental(D);
      std::vector<AlgElement> ch{corep_trace(identity_grid(D.algebra(), F.d))};
      Corep P = identity_grid(D.algebra(), F.d);
      for (unsigned k = 1; k <= 12; ++k) {
        P = grid_multiply(P, F);
        ch.push_back(corep_trace(P));
        ++tr_total;
        if (!(ch.back() == dual_trace_formula(D, k))) {
          ++tr_bad;
          o.details.push_back(cat("n=", n, " k=", k, ": trace formula differs"));
        }
      }
      for (unsigned r = 1; r <= 3; ++r) {
        std::vector<unsigned> ks(r, 1);
        while (true) {
          std::vector<AlgElement> els;
          for (unsigned k : ks) els.push_back(ch[k]);
          const CycloNum v = joint_moment(D, els);
          ++jm_total;
          if (!(v == CycloNum(closed_form_dual_moments(n, ks)))) {
            ++jm_bad;
            if (o.details.size() < 8) {
              std::string s;
              for (unsigned k : ks) s += std::to_string(k) + " ";
              o.details.push_back(cat("n=", n, " powers ", s, ": h = ", v.str(), ", formula ",
                                      closed_form_dual_moments(n, ks).str()));
            }
          }
          if (!(v == CycloNum(closed_form_dual_moments_derived(n, ks)))) ++jm_derived_bad;
          std::size_t i = 0;
          while (i < r && ks[i] == 6) ks[i++] = 1;
          if (i == r) break;
          ++ks[i];
        }
      }
      const CycloNum inv_n = CycloNum(Rational(1, static_cast<std::int64_t>(n)));
      for (unsigned k = 1; k <= 6; ++k) {
        const AlgElement a = ch[k] * inv_n;
        const MomentTable tab = star_moments(D, a, 6);
        ++law_total;
        const MatchReport m = match_distribution(tab, RefDist::dual_normalized(n, k), 6, 0.0);
        if (!m.matched) {
          ++law_bad;
          o.details.push_back(cat("n=", n, " ", m.str()));
        }
        bool derived_ok = true;
        for (unsigned p = 1; p <= 6; ++p) {
          const Rational want =
              closed_form_dual_moments_derived(n, std::vector<unsigned>(p, k)) /
              Rational(static_cast<std::int64_t>(n)).pow(p);
          const auto got = tab.lookup(p, 0);
          derived_ok = derived_ok && got && *got == CycloNum(want);
        }
        if (!derived_ok) ++law_derived_bad;
      }
    }
    o.passed = tr_bad == 0 && jm_bad == 0 && law_bad == 0;
    o.summary = cat("trace formulas differing ", counts(tr_bad, tr_total), "; printed joint-moment formula differing ",
                    counts(jm_bad, jm_total), " (derived count formula ", counts(jm_derived_bad, jm_total),
                    "); normalized laws off ", counts(law_bad, law_total), " (derived atoms ",
                    counts(law_derived_bad, law_total), ")");
  }
  return o;
}

Outcome pair_independence() {
  Outcome o;
  {
    Timed t(o, 10, "Pairwise cumulant limits at n=51 and n=101", 0);
    std::size_t total = 0, bad_printed = 0, bad_formula = 0, bad_derived = 0, verdict_bad = 0;
    std::map<std::string, std::size_t> classes;
    for (Index n : {51u, 101u}) {
      const QuantumGroup G = build_sekine(n);
      std::vector<PairSpec> specs;
      std::vector<AlgElement> els;
      for (std::int64_t a = 0; a <= 2; ++a)
        for (std::int64_t b = 1; b <= 2; ++b)
          for (std::int64_t k = 1; k <= 4; ++k) {
            const AlgElement e = sekine_char(G, a, b, static_cast<unsigned>(k));
            specs.push_back({a, b, k, false});
            els.push_back(e);
            specs.push_back({a, b, k, true});
            els.push_back(e.star());
          }
      std::vector<CycloNum> means;
      for (const auto& e : els) means.push_back(G.haar(e));
      // Classical cumulants of commuting variables are symmetric.
      for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = i; j < els.size(); ++j) {
          const PairSpec& x = specs[i];
          const PairSpec& y = specs[j];
          const CycloNum kappa = haar_product(G, els[i], els[j]) - means[i] * means[j];
          ++total;
          if (!(kappa == pair_cumulant_formula(n, x, y))) ++bad_formula;
          if (!(kappa == CycloNum(pair_limit_derived(x, y)))) ++bad_derived;
          if (pair_independent_printed(x, y) != kappa.is_zero()) ++verdict_bad;
          if (!(kappa == CycloNum(pair_limit_printed(x, y)))) {
            ++bad_printed;
            const bool even = x.k % 2 == 0 && y.k % 2 == 0;
            const std::string key = cat(even ? "k,l even" : "k or l odd", x.star != y.star ? ", e != f" : ", e = f",
                                        x.k * x.u == y.k * y.u ? ", ka = lc" : ", ka != lc",
                                        x.u == 0 && y.u == 0 ? ", a = c = 0" : "");
            ++classes[key];
          }
        }
    }
    for (const auto& [k, v] : classes) o.details.push_back(cat("printed limit differs (", k, "): ", v, " pairs"));
    o.passed = bad_printed == 0;
    o.summary = cat("printed limit differing ", counts(bad_printed, total), "; trichotomy verdict wrong ",
                    counts(verdict_bad, total), "; finite-n cumulant formula differing ", counts(bad_formula, total),
                    "; derived limit differing ", counts(bad_derived, total));
  }
  return o;
}

Outcome properties() {
  Outcome o;
  {
    Timed t(o, 11, "Property suites", 0);
    std::mt19937_64 rng(20201);
    std::vector<QuantumGroup> groups;
    groups.push_back(build_kp());
    groups.push_back(build_sekine(3));
    groups.push_back(build_sekine(4));
    groups.push_back(dual(build_sekine(3)));

    // h(w*) = conj(h(w)) on words in a random non-normal element.
    std::size_t sym_total = 0, sym_bad = 0;
    for (const auto& G : groups) {
      const std::uint32_t m = G.algebra().conductor();
      for (int trial = 0; trial < 3; ++trial) {
        Terms terms;
        std::uniform_int_distribution<Index> pick(0, static_cast<Index>(G.dim() - 1));
        std::uniform_int_distribution<int> coef(-3, 3), expo(0, static_cast<int>(m) - 1);
        for (int i = 0; i < 4; ++i)
          terms.emplace_back(pick(rng), CycloNum(coef(rng)) * CycloNum::root_of_unity(m, expo(rng)));
        const AlgElement x(G.algebra(), sparse::normalize(terms));
        const MomentTable tab = star_moments(G, x, 6);
        for (const auto& e : tab.entries) {
          ++sym_total;
          const auto adj = tab.lookup(word_adjoint(e.word));
          if (!adj || !(*adj == e.value.conj())) ++sym_bad;
        }
      }
      for (Index i = 0; i < G.dim(); ++i) {
        ++sym_total;
        const AlgElement b = AlgElement::basis(G.algebra(), i);
        if (!(G.haar(b.star()) == G.haar(b).conj())) ++sym_bad;
      }
    }

    // Power monoid law and entrywise Schur orthogonality over each catalog.
    std::size_t monoid_total = 0, monoid_bad = 0, schur_total = 0, schur_bad = 0;
    for (const auto& G : groups) {
      const IrrepCatalog cat_ = irrep_catalog(G);
      for (const auto& U : cat_.irreps) {
        std::vector<Corep> pw{identity_grid(G.algebra(), U.d)};
        for (unsigned k = 1; k <= 6; ++k) pw.push_back(corep_power(U, k));
        for (unsigned a = 0; a <= 3; ++a)
          for (unsigned b = 0; b <= 3; ++b) {
            ++monoid_total;
            if (!(grid_multiply(pw[a], pw[b]).entries == pw[a + b].entries)) ++monoid_bad;
          }
      }
      for (std::size_t p = 0; p < cat_.irreps.size(); ++p)
        for (std::size_t q = 0; q < cat_.irreps.size(); ++q) {
          const Corep& U = cat_.irreps[p];
          const Corep& V = cat_.irreps[q];
          for (std::size_t i = 0; i < U.d; ++i)
            for (std::size_t j = 0; j < U.d; ++j)
              for (std::size_t k = 0; k < V.d; ++k)
                for (std::size_t l = 0; l < V.d; ++l) {
                  ++schur_total;
                  const CycloNum got = haar_product(G, V(k, l).star(), U(i, j));
                  const CycloNum want =
                      p == q && i == k && j == l ? CycloNum(Rational(1, static_cast<std::int64_t>(U.d))) : CycloNum(0);
                  if (!(got == want)) ++schur_bad;
                }
        }
    }

    // A perturbed coproduct column must break verification.
    std::size_t mut_total = 0, mut_missed = 0;
    for (const auto& G : {groups[0], groups[1]}) {
      for (Index i = 0; i < G.dim(); i += 3) {
        Terms col = G.delta_basis(i);
        col.front().second *= CycloNum(2);
        ++mut_total;
        if (verify_hopf(G.with_delta_column(i, col)).passed()) ++mut_missed;
        Terms extra = G.delta_basis(i);
        extra.emplace_back(0, CycloNum(1));
        ++mut_total;
        if (verify_hopf(G.with_delta_column(i, sparse::normalize(extra))).passed()) ++mut_missed;
      }
    }

    o.passed = sym_bad == 0 && monoid_bad == 0 && schur_bad == 0 && mut_missed == 0;
    o.summary = cat("state symmetry failing ", counts(sym_bad, sym_total), "; monoid law failing ",
                    counts(monoid_bad, monoid_total), "; Schur orthogonality failing ", counts(schur_bad, schur_total),
                    "; mutations undetected ", counts(mut_missed, mut_total));
  }
  return o;
}

Outcome character_commutativity() {
  Outcome o;
  {
    Timed t(o, 0, "Commutativity of the character algebra", 0);
    bool ok = true;
    std::string line;
    for (Index n = 3; n <= 8; ++n) {
      const auto pairs = noncommuting_character_pairs(build_sekine(n));
      bool sigma_only = true;
      for (const auto& [a, b] : pairs)
        sigma_only = sigma_only && (a.rfind("sigma", 0) == 0 || b.rfind("sigma", 0) == 0);
      const bool good = n % 2 == 1 ? pairs.empty() : !pairs.empty() && sigma_only;
      ok = ok && good;
      line += cat(line.empty() ? "" : ", ", "n=", n, ": ", pairs.size());
      if (!pairs.empty()) o.details.push_back(cat("n=", n, " e.g. ", pairs.front().first, " with ", pairs.front().second));
    }
    o.passed = ok;
    o.summary = "non-commuting character pairs " + line + " (odd n: none; even n: each involves a sigma)";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome run_criterion(int criterion) {
  static const std::vector<Outcome (*)()> table = {
      axioms,           completeness,  kp_power_laws, kp_independence,   sekine_characters, character_spaces,
      gelfand_space,    sekine_limits, dual_group,    pair_independence, properties};
  if (criterion < 1 || criterion > kCriterionCount) throw std::out_of_range("criterion must be 1..11");
  Outcome o = table[static_cast<std::size_t>(criterion - 1)]();
  if (o.budget > 0 && o.seconds > o.budget) {
    o.passed = false;
    o.details.push_back(cat("runtime ", o.seconds, " s exceeds budget ", o.budget, " s"));
  }
  return o;
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"ThDist", "ThInd", "PropChar", "PropSpace", "PropComm",   "LemSpan",
                                               "ThOmega", "ThOdd", "ThEven",   "PropIndPair", "Dual"};
  return ids;
}

std::vector<Outcome> run_theorem(const std::string& id) {
  static const std::map<std::string, int> numbered = {
      {"ThDist", 3}, {"ThInd", 4},  {"PropChar", 5}, {"PropSpace", 6},    {"LemSpan", 6},
      {"ThOmega", 7}, {"ThOdd", 8}, {"ThEven", 8},   {"PropIndPair", 10}, {"Dual", 9}};
  if (id == "PropComm") return {character_commutativity()};
  const auto it = numbered.find(id);
  if (it == numbered.end()) throw std::invalid_argument("unknown theorem id: " + id);
  return {run_criterion(it->second)};
}

std::string format_line(const Outcome& o) {
  char time[64];
  if (o.budget > 0)
    std::snprintf(time, sizeof time, "%.1f s, budget %.0f s", o.seconds, o.budget);
  else
    std::snprintf(time, sizeof time, "%.1f s", o.seconds);
  std::string head = o.passed ? "PASS" : "FAIL";
  if (o.criterion > 0) head += cat(" [", o.criterion < 10 ? " " : "", o.criterion, "]");
  return cat(head, " ", o.title, ": ", o.summary, " (", time, ")");
}

}  // namespace fqg::suites
