#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fqg/linalg.hpp"
#include "fqg/sparse.hpp"

namespace fqg {

/// One full matrix block of a multimatrix algebra. Matrix unit E_pq of the
/// block has basis index offset + p * size + q.
struct Block {
  Index offset = 0;
  Index size = 1;
};

/// Multiplication data of a finite-dimensional algebra.
class Structure {
 public:
  virtual ~Structure() = default;

  virtual std::size_t dim() const = 0;
  /// Accumulates scale * (b_i b_j).
  virtual void product(Index i, Index j, const CycloNum& scale, Accumulator& acc) const = 0;
  /// b_i b_j as a sparse vector.
  virtual Terms product_terms(Index i, Index j) const;
  /// Accumulates a * b.
  virtual void multiply(const Terms& a, const Terms& b, Accumulator& acc) const;
  /// Visits every nonzero structure constant c_ij^k in (i, j, k) order.
  virtual void for_each_constant(const std::function<void(Index, Index, Index, const CycloNum&)>& f) const;
};

namespace detail {
struct AlgebraData;
}

/// Finite-dimensional *-algebra over Q(zeta_m).
///
/// Cheap to copy: all copies share the same immutable data, and two handles
/// denote the same algebra iff they share it.
class Algebra {
 public:
  /// Direct sum of full matrix algebras M_d for d in block_sizes.
  static Algebra multimatrix(const std::vector<Index>& block_sizes, std::uint32_t conductor,
                             std::vector<std::string> labels = {});
  /// Algebra given by explicit structure constants (i, j, k, c) meaning
  /// b_i b_j contains c b_k; star_columns[i] = star(b_i).
  struct Constant {
    Index i, j, k;
    CycloNum c;
  };
  static Algebra from_constants(std::size_t dim, std::vector<std::string> labels, std::uint32_t conductor,
                                const std::vector<Constant>& constants, Terms unit,
                                std::vector<Terms> star_columns);
  /// Algebraic tensor product; basis index of b_i (x) b_j is i * dim(B) + j.
  static Algebra tensor(const Algebra& A, const Algebra& B);

  std::size_t dim() const;
  std::uint32_t conductor() const;
  std::string label(Index i) const;
  std::vector<std::string> labels() const;
  const Terms& unit() const;
  /// star(b_i), conjugate-linear extension is applied by AlgElement::star.
  Terms star_basis(Index i) const;
  const Structure& structure() const;
  /// Block layout for multimatrix algebras, empty otherwise.
  const std::vector<Block>& blocks() const;
  bool is_multimatrix() const { return !blocks().empty(); }
  /// Factors (A, B) when this algebra was built by tensor().
  std::optional<std::pair<Algebra, Algebra>> factors() const;

  /// Index lookup by label; throws std::out_of_range.
  Index index_of(const std::string& label) const;

  friend bool operator==(const Algebra& a, const Algebra& b) { return a.d_ == b.d_; }

 private:
  explicit Algebra(std::shared_ptr<const detail::AlgebraData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::AlgebraData> d_;
};

/// Element of an Algebra as a sparse coefficient vector.
class AlgElement {
 public:
  explicit AlgElement(Algebra alg) : alg_(std::move(alg)) {}
  AlgElement(Algebra alg, Terms terms);

  static AlgElement basis(const Algebra& alg, Index i, const CycloNum& c = CycloNum(1));
  static AlgElement unit(const Algebra& alg);
  static AlgElement scalar(const Algebra& alg, const CycloNum& c);

  const Algebra& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  CycloNum coeff(Index i) const { return sparse::coeff(terms_, i); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t nnz() const { return terms_.size(); }

  AlgElement operator-() const;
  AlgElement& operator+=(const AlgElement& rhs);
  AlgElement& operator-=(const AlgElement& rhs);
  AlgElement& operator*=(const CycloNum& c);
  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
  friend AlgElement operator*(AlgElement a, const CycloNum& c) { return a *= c; }
  friend AlgElement operator*(const CycloNum& c, AlgElement a) { return a *= c; }
  friend bool operator==(const AlgElement& a, const AlgElement& b);

  AlgElement star() const;
  AlgElement pow(unsigned k) const;
  bool is_normal() const;
  bool commutes_with(const AlgElement& other) const;

  std::string str() const;

 private:
  Algebra alg_;
  Terms terms_;
};

/// a (x) b in the tensor algebra AB (which must be tensor(a.algebra(), b.algebra())).
AlgElement elem_tensor(const AlgElement& a, const AlgElement& b, const Algebra& AB);

/// Linear map between algebras, one sparse column per source basis element.
struct LinearMap {
  Algebra source;
  Algebra target;
  std::vector<Terms> columns;

  Terms apply(const Terms& x) const;
  AlgElement apply(const AlgElement& x) const;
};

/// Matrix of x -> a x in the basis of a's algebra.
CycloMatrix left_regular(const AlgElement& a);

struct Spectrum {
  std::vector<std::complex<double>> raw;
  /// Eigenvalues merged within tolerance, with multiplicities; sorted.
  std::vector<std::pair<std::complex<double>, std::size_t>> merged;
  bool normal = true;
};

/// Eigenvalues of the left-regular action of a, computed in floating point.
/// Multimatrix algebras are handled block by block (each eigenvalue of a
/// d x d block appears with multiplicity d).
Spectrum spectrum(const AlgElement& a, double tol = 1e-9);

/// Numerical rank of a family of sparse vectors in a space of dimension dim.
std::size_t rank_float(const std::vector<Terms>& vectors, std::size_t dim, double tol = 1e-9);

}  // namespace fqg
