#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fqg/coreps.hpp"

namespace fqg {

// ---------------------------------------------------------------------------
// Words and tables

/// Sequence over {a, a*}; true marks a starred letter.
using MomentWord = std::vector<bool>;

/// "aa*a"; the empty word prints as "1".
std::string word_str(const MomentWord& w);
/// Inverse of word_str; throws std::invalid_argument.
MomentWord parse_word(const std::string& s);
/// Reversed and starred: (a^e1 ... a^er)^* = a^{!er} ... a^{!e1}.
MomentWord word_adjoint(const MomentWord& w);

struct MomentEntry {
  MomentWord word;
  CycloNum value;
};

struct MomentTable {
  std::string element;
  unsigned max_order = 0;
  /// Words reduced to a^k a*^l because the element commutes with its adjoint.
  bool normal = false;
  std::vector<MomentEntry> entries;

  /// Value of a word; for normal tables any word with the same letter counts.
  std::optional<CycloNum> lookup(const MomentWord& w) const;
  std::optional<CycloNum> lookup(unsigned k, unsigned l) const;
};

/// {"element", "max_order", "normal", "moments": [{"word", "value"}]} where a
/// value is {"rational": "p/q"} or {"m": conductor, "coeffs": [...]}.
json moment_table_to_json(const MomentTable& t);
json moment_value_json(const CycloNum& x);
/// Lines "word,value" preceded by a header.
std::string moment_table_to_csv(const MomentTable& t);

// ---------------------------------------------------------------------------
// Haar moments and cumulants

/// h(f_1 f_2 ... f_r); the empty product is the unit.
CycloNum haar_moment(const QuantumGroup& G, const std::vector<AlgElement>& factors);
/// h(x y) without forming the product on multimatrix algebras.
CycloNum haar_product(const QuantumGroup& G, const AlgElement& x, const AlgElement& y);

constexpr unsigned kDefaultMaxOrder = 16;

/// All words of length 1..max_order. Throws if max_order exceeds cap.
MomentTable star_moments(const QuantumGroup& G, const AlgElement& a, unsigned max_order,
                         std::string descriptor = "a", unsigned cap = kDefaultMaxOrder);

CycloNum joint_moment(const QuantumGroup& G, const std::vector<AlgElement>& elements);

class CommutationError : public std::invalid_argument {
 public:
  CommutationError(std::size_t i, std::size_t j);
  std::size_t first, second;
};

/// Blocks sorted by least element, each block sorted.
struct SetPartition {
  std::vector<std::vector<std::size_t>> blocks;
};
std::vector<SetPartition> set_partitions(std::size_t r);

/// Classical cumulant from a moment oracle indexed by subsets (bitmask).
CycloNum cumulant_from_moments(std::size_t r, const std::function<CycloNum(unsigned mask)>& moment);
/// Moment of the full set rebuilt from cumulants of sub-families.
CycloNum moment_from_cumulants(std::size_t r, const std::function<CycloNum(unsigned mask)>& cumulant);

constexpr std::size_t kDefaultCumulantCap = 5;

/// Joint cumulant; elements must commute pairwise (CommutationError otherwise).
CycloNum cumulant(const QuantumGroup& G, const std::vector<AlgElement>& elements,
                  std::size_t cap = kDefaultCumulantCap);

// ---------------------------------------------------------------------------
// Reference laws

struct RefDist {
  enum class Tag { kDirac, kArcsine, kCArcsine, kUniformCircle, kMixture };
  Tag tag = Tag::kDirac;
  CycloNum point;   // dirac atom
  Rational scale;   // c_arcsine alpha or circle radius
  std::vector<std::pair<Rational, RefDist>> components;
  std::string name;

  static RefDist dirac(CycloNum x);
  static RefDist arcsine();  // on (-2, 2)
  static RefDist c_arcsine(Rational alpha);
  static RefDist uniform_circle(Rational radius);
  static RefDist mixture(std::vector<std::pair<Rational, RefDist>> parts, std::string name = "");
  /// The four laws of the Kac-Paljutkin characters; index in {0, 1, 2, 4}.
  static RefDist kp_law(int index);
  /// Law of (1/n) chi(Xhat^k) in the dual Sekine group.
  static RefDist dual_normalized(Index n, unsigned k);
};

/// E[Z^k conj(Z)^l].
CycloNum refdist_moment(const RefDist& d, unsigned k, unsigned l);

// ---------------------------------------------------------------------------
// Closed forms

/// Class of chi(X^k) in the Kac-Paljutkin group: 1, 2, 4 or 0.
int kp_law_index(unsigned k);
/// h(chi(X^k1) ... chi(X^kr)) by the four-case formula.
Rational closed_form_kp_joint(const std::vector<unsigned>& ks);
/// chi(X^k) by the four-case element formula.
AlgElement closed_form_kp_char(const QuantumGroup& kp, unsigned k);

/// Coefficient of the matrix block in even characters. kDerived uses the
/// product of the two off-diagonal entries (2 cos(k u v pi / n)); kAsPrinted
/// uses 2 cos(k v^2 pi / n).
enum class BlockCoefficient { kDerived, kAsPrinted };

CycloNum sekine_block_coefficient(Index n, std::int64_t u, std::int64_t v, std::int64_t k,
                                  BlockCoefficient rule = BlockCoefficient::kDerived);
AlgElement closed_form_sekine_char(const QuantumGroup& G, std::int64_t u, std::int64_t v, std::int64_t k,
                                   BlockCoefficient rule = BlockCoefficient::kDerived);
/// 1/2 [n | (r1 - rs) u] sum_l binom(r1 + rs, l) [n | (2l - r1 - rs) v].
Rational closed_form_sekine_moments(Index n, std::int64_t u, std::int64_t v, unsigned r1, unsigned rs);
/// 1/2 c^(alpha + beta) [n | k u (alpha - beta)] with c the block coefficient.
CycloNum closed_form_sekine_even(Index n, std::int64_t u, std::int64_t v, std::int64_t k, unsigned alpha,
                                 unsigned beta, BlockCoefficient rule = BlockCoefficient::kDerived);
/// h(x^r1 x*^rs) for x = chi((X^(u,v))^k), combining the two forms above.
CycloNum closed_form_sekine_char_moment(Index n, std::int64_t u, std::int64_t v, std::int64_t k, unsigned r1,
                                        unsigned rs, BlockCoefficient rule = BlockCoefficient::kDerived);

/// n^(r-2) [sum k_i even] gcd(n, k_1, ..., k_r).
Rational closed_form_dual_moments(Index n, const std::vector<unsigned>& ks);
/// Value computed in the group-algebra part of the dual: equal to the formula
/// above when some k_i is odd; n^(r-1) #{t : n | k_i t, n | t sum(k_i)/2} when
/// all k_i are even.
Rational closed_form_dual_moments_derived(Index n, const std::vector<unsigned>& ks);
/// chi(Xhat^k) from the odd/even case formulas.
AlgElement dual_trace_formula(const QuantumGroup& D, unsigned k);

// ---------------------------------------------------------------------------
// Character spaces

struct CharacterTerm {
  CycloNum coeff;
  std::string label;
  AlgElement element;
};

struct ChebyshevDecomposition {
  Index n = 0;
  std::int64_t u = 0, v = 0;
  /// Coefficients of x^0..x^v in 2 T_v(x / 2), x = chi(X^(0,1)).
  std::vector<std::int64_t> poly;
  /// Integer multiple of (rho_0^+ + rho_0^-) replacing the constant term.
  std::int64_t rho_constant = 0;
  bool verified_plus = false;   // with rho_u^+
  bool verified_minus = false;  // with rho_u^-
  std::string str() const;
};

/// Expresses chi(X^(u,v)) through chi(X^(0,1)) and checks both signs exactly.
ChebyshevDecomposition chebyshev_decompose(const QuantumGroup& G, std::int64_t u, std::int64_t v);

struct SpaceDecomposition {
  std::int64_t u = 0, v = 0, k = 0;
  std::vector<CharacterTerm> terms;
  bool verified = false;         // combination equals chi((X^(u,v))^k)
  bool verified_printed = false;  // same with the printed block coefficients
  std::string str() const;
};

/// chi((X^(u,v))^k) as a combination of irreducible characters.
SpaceDecomposition propspace_decompose(const QuantumGroup& G, std::int64_t u, std::int64_t v, std::int64_t k);

/// Pairs from the catalog whose characters fail to commute.
std::vector<std::pair<std::string, std::string>> noncommuting_character_pairs(const QuantumGroup& G);

struct OmegaPoint {
  CycloNum a;  // value of rho_1^-
  int b = 1;   // value of rho_1^+ divided by a
  CycloNum c;  // value of chi(X^(0,1))
  Rational weight;
  AlgElement idempotent;
};

struct OmegaSpace {
  Index n = 0;
  std::vector<OmegaPoint> points;
  /// Idempotents orthogonal, summing to 1, generators recovered, points distinct.
  bool idempotents_ok = false;
  Rational total_mass;
};

OmegaSpace omega_space(const QuantumGroup& G);

struct OmegaMonomial {
  unsigned p = 0, m = 0, q = 0;  // exponents of rho_1^+, rho_1^-, chi(X^(0,1))
  CycloNum haar;
  CycloNum point_sum;
  CycloNum uniform_sum;  // with the printed uniform weights
};

struct OmegaCheck {
  std::vector<OmegaMonomial> monomials;
  std::size_t mismatches = 0;
  std::size_t uniform_mismatches = 0;
};

/// Compares h on all monomials of total degree <= max_degree with the point sums.
OmegaCheck omega_reproduce(const QuantumGroup& G, const OmegaSpace& omega, unsigned max_degree = 8);
/// Printed weight of a b = 1 point: 1 / (2n(p+1)) if 4 | n, else 1 / (2n(p+2)), p = floor(n/2).
Rational omega_uniform_weight(Index n);

struct SpectrumComparison {
  std::string element;
  std::vector<std::complex<double>> computed;
  std::vector<std::complex<double>> expected;
  double worst = 0.0;
  bool ok = false;
};

/// Spectra of rho_1^+, rho_1^-, chi(X^(0,1)) against the listed sets.
std::vector<SpectrumComparison> omega_spectra(const QuantumGroup& G, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Matching, independence and scans

struct WordMatch {
  MomentWord word;
  CycloNum value;
  CycloNum expected;
  double deviation = 0.0;
  bool exact = false;
  bool ok = false;
};

struct MatchReport {
  std::string element;
  std::string law;
  std::vector<WordMatch> words;
  bool matched = false;
  double worst = 0.0;
  std::string str() const;
};

/// Words of length <= max_order; exact equality required when both sides are
/// rational, |difference| <= tol otherwise.
MatchReport match_distribution(const MomentTable& table, const RefDist& d, unsigned max_order, double tol = 1e-9);

struct PairSpec {
  std::int64_t u = 0, v = 1, k = 1;
  bool star = false;
};

struct IndependenceReport {
  PairSpec x, y;
  Index n = 0;
  CycloNum cumulant;             // finite n, direct
  CycloNum cumulant_formula;     // finite n, derived closed form
  Rational limit_printed;        // printed limit formula
  Rational limit_derived;        // limit of the derived finite-n formula
  bool printed_independent = false;  // trichotomy verdict
  std::string str() const;
};

/// Printed limit delta_{ka,lc} delta_{{e,f},{1,*}} (delta_{kb,ld} + 2 [k, l even]).
Rational pair_limit_printed(const PairSpec& x, const PairSpec& y);
/// Trichotomy: ka != lc, or e = f, or (k or l odd and kb != ld).
bool pair_independent_printed(const PairSpec& x, const PairSpec& y);
/// Finite-n cumulant from the character formulas (valid for n above the word thresholds).
CycloNum pair_cumulant_formula(Index n, const PairSpec& x, const PairSpec& y);
Rational pair_limit_derived(const PairSpec& x, const PairSpec& y);

IndependenceReport pairwise_independence(const QuantumGroup& G, const PairSpec& x, const PairSpec& y);

/// Element family indexed by n.
struct FamilySpec {
  enum class Kind { kSekineChar, kDualNormalized };
  Kind kind = Kind::kSekineChar;
  std::int64_t u = 0, v = 1, k = 1;
  std::string str() const;
  /// Parses "sekine-char:u,v,k" or "dual-normalized:k".
  static FamilySpec parse(const std::string& s);
};

struct ScanRow {
  Index n = 0;
  MomentWord word;
  CycloNum value;
  CycloNum limit;
  double deviation = 0.0;
};

struct ScanReport {
  FamilySpec family;
  std::string law;
  std::vector<ScanRow> rows;
  /// Per word (in table order), smallest scanned n from which all later n agree exactly.
  std::vector<std::pair<MomentWord, std::optional<Index>>> first_exact;
  std::string csv() const;
};

AlgElement family_element(const QuantumGroup& G, const FamilySpec& f);
QuantumGroup family_group(const FamilySpec& f, Index n);
ScanReport asymptotic_scan(const FamilySpec& f, const RefDist& d, unsigned max_order, const std::vector<Index>& ns);

}  // namespace fqg
