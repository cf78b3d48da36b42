#include "fqg/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace fqg {

CycloMatrix CycloMatrix::identity(std::size_t n) {
  CycloMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycloNum(1);
  return m;
}

std::vector<CycloNum> CycloMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  CycloMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const CycloNum& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
    }
  return c;
}

bool operator==(const CycloMatrix& a, const CycloMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

void RowReducer::reduce(std::vector<CycloNum>& row) const {
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (row[p].is_zero()) continue;
    const CycloNum f = row[p];
    const auto& b = basis_[r];
    for (std::size_t c = 0; c < width_; ++c)
      if (!b[c].is_zero()) row[c] -= f * b[c];
  }
}

bool RowReducer::add_row(std::vector<CycloNum> row) {
  if (row.size() != width_) throw std::invalid_argument("row width mismatch");
  reduce(row);
  // Prefer the sparsest nonzero entry as pivot to limit coefficient growth.
  std::size_t pivot = width_;
  std::size_t best = 0;
  for (std::size_t c = 0; c < width_; ++c) {
    if (row[c].is_zero()) continue;
    const std::size_t weight = row[c].terms().size() * (row[c].is_rational() ? 1 : 4);
    if (pivot == width_ || weight < best) {
      pivot = c;
      best = weight;
      if (weight == 1) break;
    }
  }
  if (pivot == width_) return false;
  const CycloNum inv = row[pivot].inverse();
  for (auto& v : row)
    if (!v.is_zero()) v *= inv;
  // keep the basis fully reduced at the new pivot column
  for (auto& b : basis_) {
    if (b[pivot].is_zero()) continue;
    const CycloNum f = b[pivot];
    for (std::size_t c = 0; c < width_; ++c)
      if (!row[c].is_zero()) b[c] -= f * row[c];
  }
  basis_.push_back(std::move(row));
  pivots_.push_back(pivot);
  return true;
}

std::vector<std::vector<CycloNum>> RowReducer::nullspace() const {
  std::vector<char> is_pivot(width_, 0);
  for (auto p : pivots_) is_pivot[p] = 1;
  std::vector<std::vector<CycloNum>> out;
  for (std::size_t free = 0; free < width_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<CycloNum> v(width_);
    v[free] = CycloNum(1);
    for (std::size_t r = 0; r < basis_.size(); ++r) v[pivots_[r]] = -basis_[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

bool RowReducer::in_span(std::vector<CycloNum> v) const {
  if (v.size() != width_) throw std::invalid_argument("row width mismatch");
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const CycloNum& c) { return c.is_zero(); });
}

std::size_t exact_rank(const CycloMatrix& m) {
  RowReducer r(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) r.add_row(m.row(i));
  return r.rank();
}

std::vector<std::vector<CycloNum>> nullspace(const CycloMatrix& m) {
  RowReducer r(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) r.add_row(m.row(i));
  return r.nullspace();
}

}  // namespace fqg
