#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fqg/cyclo.hpp"

namespace fqg {

using Index = std::uint32_t;
/// One coordinate of a sparse vector over Q(zeta_m).
using Term = std::pair<Index, CycloNum>;
/// Sparse vector: sorted by index, no explicit zeros.
using Terms = std::vector<Term>;

/// Scatter-add buffer for building sparse vectors.
///
/// Uses a dense slot array for moderate dimensions and a hash map beyond
/// that. take() returns the canonical sorted, zero-free term list.
class Accumulator {
 public:
  explicit Accumulator(std::size_t dim);

  void add(Index i, const CycloNum& c);
  void add_product(Index i, const CycloNum& a, const CycloNum& b);
  void add_terms(const Terms& terms, const CycloNum& scale);
  Terms take();

 private:
  static constexpr std::size_t kDenseLimit = 1U << 17;

  std::size_t dim_;
  bool dense_;
  std::vector<CycloNum> slots_;
  std::vector<char> used_;
  std::vector<Index> touched_;
  std::unordered_map<Index, CycloNum> map_;
};

namespace sparse {

/// Sorts, merges duplicates and drops zeros.
Terms normalize(Terms terms);
Terms add(const Terms& a, const Terms& b);
Terms sub(const Terms& a, const Terms& b);
Terms scale(const Terms& a, const CycloNum& c);
Terms negate(const Terms& a);
CycloNum coeff(const Terms& a, Index i);
/// Sum of a_i * w_i over the support of a, where w is dense.
CycloNum dot_dense(const Terms& a, const std::vector<CycloNum>& w);
/// Sum of a_i * w_i over the common support.
CycloNum dot(const Terms& a, const Terms& w);

}  // namespace sparse
}  // namespace fqg
