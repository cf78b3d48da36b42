#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fqg/algebra.hpp"

namespace fqg {

/// Basis layout of the Sekine algebra: the n^2 one-dimensional summands
/// e(i,j) first, then the matrix units E(i,j) of the n x n block. All indices
/// are taken mod n.
struct SekineLayout {
  Index n = 2;
  Index e(std::int64_t i, std::int64_t j) const { return static_cast<Index>(mod(i) * n + mod(j)); }
  Index E(std::int64_t i, std::int64_t j) const { return static_cast<Index>(n * n + mod(i) * n + mod(j)); }
  Index dim() const { return 2 * n * n; }
  std::int64_t mod(std::int64_t x) const {
    const auto m = static_cast<std::int64_t>(n);
    return ((x % m) + m) % m;
  }
};

/// Which constructor produced a group; used for family-specific shortcuts.
enum class Family { kKacPaljutkin, kSekine, kDualSekine, kGeneric };

/// Finite quantum group: a finite-dimensional *-algebra with coproduct,
/// counit, antipode and Haar functional, all stored on the basis.
///
/// The coproduct is produced column by column on demand and cached, so
/// large members of a family can be used for moment computations without
/// materializing a 4 n^4 tensor.
class QuantumGroup {
 public:
  using DeltaFn = std::function<Terms(Index)>;

  QuantumGroup(std::string name, Family family, Index param, Algebra A, DeltaFn delta,
               std::vector<CycloNum> counit, std::vector<Terms> antipode, std::vector<CycloNum> haar);

  const std::string& name() const { return name_; }
  Family family() const { return family_; }
  /// n for the Sekine family and its dual, 0 otherwise.
  Index param() const { return param_; }
  const Algebra& algebra() const { return A_; }
  std::size_t dim() const { return A_.dim(); }
  /// A (x) A, basis index i * dim + j.
  const Algebra& tensor_square() const;

  /// Delta(b_i) as a sparse vector over A (x) A.
  const Terms& delta_basis(Index i) const;
  AlgElement delta(const AlgElement& a) const;

  const std::vector<CycloNum>& counit_weights() const { return counit_; }
  CycloNum counit(const AlgElement& a) const;
  const std::vector<Terms>& antipode_columns() const { return antipode_; }
  AlgElement antipode(const AlgElement& a) const;
  const std::vector<CycloNum>& haar_weights() const { return haar_; }
  CycloNum haar(const AlgElement& a) const;

  /// Copy with a replaced coproduct column (for mutation tests).
  QuantumGroup with_delta_column(Index i, Terms column) const;

 private:
  struct Cache;

  std::string name_;
  Family family_;
  Index param_;
  Algebra A_;
  DeltaFn delta_fn_;
  std::vector<CycloNum> counit_;
  std::vector<Terms> antipode_;
  std::vector<CycloNum> haar_;
  std::shared_ptr<Cache> cache_;
};

/// The eight-dimensional Kac-Paljutkin quantum group on C^4 + M_2, basis
/// e1..e4, E11, E12, E21, E22, over Q(zeta_8).
QuantumGroup build_kp();
/// Sekine group of order 2n^2 over Q(zeta_2n). Throws for n < 2.
QuantumGroup build_sekine(Index n);
/// Dual quantum group: multiplication is the transpose of the coproduct and
/// vice versa; the Haar state evaluates at the normalized integral of G.
/// Throws std::invalid_argument when G fails the Hopf axioms.
QuantumGroup dual(const QuantumGroup& G);

/// Labels used by build_sekine: "e(i,j)" and "E(i,j)" with E indices 1..n.
std::string sekine_label(const SekineLayout& L, Index idx);

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

struct Report {
  std::string subject;
  std::vector<CheckResult> checks;

  bool passed() const;
  void add(std::string name, bool ok, std::string detail = {});
  void skip(std::string name, std::string reason);
  std::string str() const;
};

struct VerifyOptions {
  /// Exhaustive pair checks up to this dimension, sampled beyond.
  std::size_t exhaustive_dim = 50;
  std::size_t random_pairs = 200;
  std::uint64_t seed = 20201;
};

/// Coassociativity, counit, antipode, unitality, multiplicativity and
/// star-compatibility of the coproduct, each checked exactly on the basis.
Report verify_hopf(const QuantumGroup& G, const VerifyOptions& opt = {});
/// Left and right invariance (exact), h(1) = 1 (exact), Gram matrix PSD.
Report verify_haar(const QuantumGroup& G, double tol = 1e-9);
/// Numerical rank of the two cancellation spans; skipped above max_dim.
Report verify_cancellation(const QuantumGroup& G, double tol = 1e-9, std::size_t max_dim = 32);
bool verify_cocommutative(const QuantumGroup& G);

/// Solution space of the left-invariance system with phi(1) = 1.
struct HaarUniqueness {
  std::size_t solution_dim = 0;
  bool equals_haar = false;
};
HaarUniqueness haar_uniqueness(const QuantumGroup& G);

/// Exact rank of the span of (1 (x) b_i) Delta(b_j) (left = true) or
/// (b_i (x) 1) Delta(b_j).
std::size_t cancellation_rank_exact(const QuantumGroup& G, bool left);

/// Normalized two-sided integral: a L = eps(a) L = L a, eps(L) = 1.
AlgElement normalized_integral(const QuantumGroup& G);

}  // namespace fqg
