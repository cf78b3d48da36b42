#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fqg/cyclo.hpp"

namespace fqg {

/// Dense row-major matrix over Q(zeta_m).
class CycloMatrix {
 public:
  CycloMatrix() = default;
  CycloMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CycloMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  CycloNum& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycloNum& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<CycloNum> row(std::size_t r) const;

  friend CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b);
  friend bool operator==(const CycloMatrix& a, const CycloMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycloNum> data_;
};

/// Incremental exact Gaussian elimination over Q(zeta_m).
///
/// Rows are reduced against the current echelon basis as they arrive, so the
/// memory footprint stays at rank x width regardless of how many equations
/// are fed in.
class RowReducer {
 public:
  explicit RowReducer(std::size_t width) : width_(width) {}

  /// Returns true if the row was independent of the rows seen so far.
  bool add_row(std::vector<CycloNum> row);
  std::size_t rank() const { return basis_.size(); }
  std::size_t width() const { return width_; }
  /// Basis of {x : row . x = 0 for every added row}.
  std::vector<std::vector<CycloNum>> nullspace() const;
  /// True when v lies in the row span.
  bool in_span(std::vector<CycloNum> v) const;

 private:
  void reduce(std::vector<CycloNum>& row) const;

  std::size_t width_;
  // Each basis row is normalized to 1 at its pivot and fully reduced.
  std::vector<std::vector<CycloNum>> basis_;
  std::vector<std::size_t> pivots_;
};

std::size_t exact_rank(const CycloMatrix& m);
std::vector<std::vector<CycloNum>> nullspace(const CycloMatrix& m);

}  // namespace fqg
