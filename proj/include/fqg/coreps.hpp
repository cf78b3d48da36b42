#pragma once

#include <string>
#include <vector>

#include "fqg/io.hpp"
#include "fqg/qgroup.hpp"

namespace fqg {

/// Square matrix with entries in a quantum group's algebra.
struct Corep {
  std::string label;
  std::size_t d = 0;
  std::vector<AlgElement> entries;  // row-major

  const AlgElement& operator()(std::size_t i, std::size_t j) const { return entries[i * d + j]; }
  AlgElement& operator()(std::size_t i, std::size_t j) { return entries[i * d + j]; }
  const Algebra& algebra() const { return entries.front().algebra(); }
};

Corep make_grid(std::string label, std::size_t d, std::vector<AlgElement> entries);
Corep identity_grid(const Algebra& A, std::size_t d);
/// Grid product in M_d(A).
Corep grid_multiply(const Corep& U, const Corep& V);
/// Entrywise adjoint: conj(U)_ij = U_ij^*.
Corep conjugate(const Corep& U);
Corep direct_sum(const Corep& U, const Corep& V);

struct CorepReport {
  bool corep_identity = false;
  bool counit_identity = false;
  bool unitary = false;
  bool invertible = false;
  bool ok() const { return corep_identity && counit_identity && invertible; }
  std::string str() const;
};

CorepReport is_corep(const QuantumGroup& G, const Corep& U);
bool is_unitary(const Corep& U);

/// The four group-like elements of the Kac-Paljutkin group; the first is 1.
std::vector<AlgElement> kp_grouplikes(const QuantumGroup& kp);
/// Two-dimensional fundamental corepresentation with sign a and
/// lambda = zeta_8^j.
Corep kp_fundamental(const QuantumGroup& kp, int a, int j);
/// Rebuilds every basis element of the algebra from the entries of
/// kp_fundamental(a, j) by the explicit generation formulas.
bool kp_generation_check(const QuantumGroup& kp, int a, int j);

enum class OneDimKind { kRho, kSigma };

/// rho_l^(+/-) or sigma_l^(+/-) (n even only); sign is +1 or -1.
AlgElement sekine_one_dim(const QuantumGroup& G, std::int64_t l, int sign, OneDimKind kind);
/// Two-dimensional X^(u,v). With check_range the parameters must lie in the
/// irreducible range; without it any integers are accepted (indices mod n).
Corep sekine_two_dim(const QuantumGroup& G, std::int64_t u, std::int64_t v, bool check_range = true);
/// Largest v of the irreducible two-dimensional family.
std::int64_t sekine_v_max(Index n);
/// n-dimensional corepresentation of the dual Sekine group with entries E^(i,j).
Corep dual_fundamental(const QuantumGroup& D);

/// Power in M_d(A); k <= max_power.
Corep corep_power(const Corep& U, unsigned k, unsigned max_power = 64);
AlgElement corep_trace(const Corep& U);

/// Basis of {T (d_V x d_U) : (T (x) 1) U = V (T (x) 1)}.
std::vector<CycloMatrix> intertwiners(const Corep& U, const Corep& V);
bool is_irreducible(const Corep& U);
bool equivalent(const Corep& U, const Corep& V);

struct IrrepCatalog {
  std::string group;
  std::vector<Corep> irreps;
};

/// Complete list of irreducibles for the Kac-Paljutkin group, the Sekine
/// groups and their duals.
IrrepCatalog irrep_catalog(const QuantumGroup& G);

/// Sum of squared dimensions, exact character orthogonality and pairwise
/// non-equivalence.
Report verify_complete(const QuantumGroup& G, const IrrepCatalog& catalog);

/// [{label, d, entries: [[{basis label: value}, ...], ...]}, ...]
json catalog_to_json(const IrrepCatalog& catalog);
json element_to_json(const AlgElement& a);

}  // namespace fqg
