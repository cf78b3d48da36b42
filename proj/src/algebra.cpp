#include "fqg/algebra.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fqg {

// ---------------------------------------------------------------------------
// Structure defaults

Terms Structure::product_terms(Index i, Index j) const {
  Accumulator acc(dim());
  product(i, j, CycloNum(1), acc);
  return acc.take();
}

void Structure::multiply(const Terms& a, const Terms& b, Accumulator& acc) const {
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b) product(i, j, ca * cb, acc);
}

void Structure::for_each_constant(const std::function<void(Index, Index, Index, const CycloNum&)>& f) const {
  const auto n = static_cast<Index>(dim());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (const auto& [k, c] : product_terms(i, j)) f(i, j, k, c);
}

namespace {

class MultimatrixStructure final : public Structure {
 public:
  explicit MultimatrixStructure(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    for (Index b = 0; b < blocks_.size(); ++b) {
      const Index n = blocks_[b].size * blocks_[b].size;
      for (Index k = 0; k < n; ++k) block_of_.push_back(b);
    }
  }

  std::size_t dim() const override { return block_of_.size(); }

  void product(Index i, Index j, const CycloNum& scale, Accumulator& acc) const override {
    const Index bi = block_of_[i];
    if (bi != block_of_[j]) return;
    const Block& B = blocks_[bi];
    const Index ri = i - B.offset, rj = j - B.offset;
    if (ri % B.size != rj / B.size) return;
    acc.add(B.offset + (ri / B.size) * B.size + rj % B.size, scale);
  }

  Terms product_terms(Index i, Index j) const override {
    const Index bi = block_of_[i];
    if (bi != block_of_[j]) return {};
    const Block& B = blocks_[bi];
    const Index ri = i - B.offset, rj = j - B.offset;
    if (ri % B.size != rj / B.size) return {};
    return {{B.offset + (ri / B.size) * B.size + rj % B.size, CycloNum(1)}};
  }

  void multiply(const Terms& a, const Terms& b, Accumulator& acc) const override {
    auto less = [](const Term& t, Index k) { return t.first < k; };
    for (const auto& [i, ca] : a) {
      const Block& B = blocks_[block_of_[i]];
      const Index p = (i - B.offset) / B.size;
      const Index q = (i - B.offset) % B.size;
      const Index row_begin = B.offset + q * B.size;
      auto it = std::lower_bound(b.begin(), b.end(), row_begin, less);
      for (; it != b.end() && it->first < row_begin + B.size; ++it) {
        acc.add(B.offset + p * B.size + (it->first - row_begin), ca * it->second);
      }
    }
  }

  void for_each_constant(const std::function<void(Index, Index, Index, const CycloNum&)>& f) const override {
    const CycloNum one(1);
    for (const Block& B : blocks_) {
      const Index d = B.size;
      for (Index p = 0; p < d; ++p)
        for (Index q = 0; q < d; ++q)
          for (Index r = 0; r < d; ++r)
            f(B.offset + p * d + q, B.offset + q * d + r, B.offset + p * d + r, one);
    }
  }

  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  std::vector<Block> blocks_;
  std::vector<Index> block_of_;
};

class ExplicitStructure final : public Structure {
 public:
  using Row = std::vector<std::pair<Index, Terms>>;

  ExplicitStructure(std::size_t dim, const std::vector<Algebra::Constant>& constants) : rows_(dim) {
    std::vector<std::vector<std::pair<Index, Term>>> raw(dim);
    for (const auto& c : constants) {
      if (c.i >= dim || c.j >= dim || c.k >= dim) throw std::invalid_argument("structure constant index out of range");
      raw[c.i].push_back({c.j, {c.k, c.c}});
    }
    for (std::size_t i = 0; i < dim; ++i) {
      auto& r = raw[i];
      std::stable_sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (std::size_t s = 0; s < r.size();) {
        std::size_t e = s;
        Terms t;
        while (e < r.size() && r[e].first == r[s].first) t.push_back(r[e++].second);
        t = sparse::normalize(std::move(t));
        if (!t.empty()) rows_[i].emplace_back(r[s].first, std::move(t));
        s = e;
      }
    }
  }

  std::size_t dim() const override { return rows_.size(); }

  const Terms* find(Index i, Index j) const {
    const Row& row = rows_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& e, Index k) { return e.first < k; });
    if (it == row.end() || it->first != j) return nullptr;
    return &it->second;
  }

  void product(Index i, Index j, const CycloNum& scale, Accumulator& acc) const override {
    if (const Terms* t = find(i, j)) acc.add_terms(*t, scale);
  }

  Terms product_terms(Index i, Index j) const override {
    if (const Terms* t = find(i, j)) return *t;
    return {};
  }

  void multiply(const Terms& a, const Terms& b, Accumulator& acc) const override {
    for (const auto& [i, ca] : a) {
      const Row& row = rows_[i];
      auto x = row.begin();
      auto y = b.begin();
      while (x != row.end() && y != b.end()) {
        if (x->first < y->first) {
          ++x;
        } else if (y->first < x->first) {
          ++y;
        } else {
          acc.add_terms(x->second, ca * y->second);
          ++x;
          ++y;
        }
      }
    }
  }

  void for_each_constant(const std::function<void(Index, Index, Index, const CycloNum&)>& f) const override {
    for (Index i = 0; i < rows_.size(); ++i)
      for (const auto& [j, t] : rows_[i])
        for (const auto& [k, c] : t) f(i, j, k, c);
  }

 private:
  std::vector<Row> rows_;
};

class TensorStructure final : public Structure {
 public:
  TensorStructure(const Structure& a, const Structure& b) : a_(a), b_(b), db_(static_cast<Index>(b.dim())) {}

  std::size_t dim() const override { return a_.dim() * b_.dim(); }

  void product(Index i, Index j, const CycloNum& scale, Accumulator& acc) const override {
    const Terms pa = a_.product_terms(i / db_, j / db_);
    if (pa.empty()) return;
    const Terms pb = b_.product_terms(i % db_, j % db_);
    for (const auto& [ka, ca] : pa) {
      const CycloNum s = scale * ca;
      for (const auto& [kb, cb] : pb) acc.add(ka * db_ + kb, s * cb);
    }
  }

 private:
  const Structure& a_;
  const Structure& b_;
  Index db_;
};

}  // namespace

namespace detail {

enum class Kind { kMultimatrix, kExplicit, kTensor };

struct AlgebraData {
  Kind kind = Kind::kExplicit;
  std::size_t dim = 0;
  std::uint32_t conductor = 1;
  std::vector<std::string> labels;
  Terms unit;
  std::vector<Terms> star;
  std::vector<Block> blocks;
  std::unique_ptr<Structure> structure;
  std::optional<std::pair<Algebra, Algebra>> factors;
  std::unordered_map<std::string, Index> label_index;

  void index_labels() {
    for (Index i = 0; i < labels.size(); ++i) label_index.emplace(labels[i], i);
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Algebra

Algebra Algebra::multimatrix(const std::vector<Index>& block_sizes, std::uint32_t conductor,
                             std::vector<std::string> labels) {
  if (block_sizes.empty()) throw std::invalid_argument("multimatrix algebra needs at least one block");
  auto d = std::make_shared<detail::AlgebraData>();
  d->kind = detail::Kind::kMultimatrix;
  d->conductor = conductor;
  Index offset = 0;
  for (Index s : block_sizes) {
    if (s == 0) throw std::invalid_argument("block size must be positive");
    d->blocks.push_back({offset, s});
    offset += s * s;
  }
  d->dim = offset;
  if (labels.empty()) {
    for (Index b = 0; b < d->blocks.size(); ++b) {
      const Index s = d->blocks[b].size;
      for (Index p = 0; p < s; ++p)
        for (Index q = 0; q < s; ++q)
          labels.push_back(s == 1 ? "b" + std::to_string(b)
                                  : "b" + std::to_string(b) + "[" + std::to_string(p) + "," + std::to_string(q) + "]");
    }
  }
  if (labels.size() != d->dim) throw std::invalid_argument("label count does not match dimension");
  d->labels = std::move(labels);
  for (const Block& B : d->blocks)
    for (Index p = 0; p < B.size; ++p) d->unit.emplace_back(B.offset + p * B.size + p, CycloNum(1));
  d->structure = std::make_unique<MultimatrixStructure>(d->blocks);
  d->index_labels();
  return Algebra(std::move(d));
}

Algebra Algebra::from_constants(std::size_t dim, std::vector<std::string> labels, std::uint32_t conductor,
                                const std::vector<Constant>& constants, Terms unit, std::vector<Terms> star_columns) {
  if (dim == 0) throw std::invalid_argument("algebra dimension must be positive");
  if (labels.empty())
    for (Index i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
  if (labels.size() != dim) throw std::invalid_argument("label count does not match dimension");
  if (star_columns.size() != dim) throw std::invalid_argument("star map must have one column per basis element");
  for (const auto& col : star_columns)
    for (const auto& t : col)
      if (t.first >= dim) throw std::invalid_argument("star index out of range");
  for (const auto& t : unit)
    if (t.first >= dim) throw std::invalid_argument("unit index out of range");
  auto d = std::make_shared<detail::AlgebraData>();
  d->kind = detail::Kind::kExplicit;
  d->dim = dim;
  d->conductor = conductor;
  d->labels = std::move(labels);
  d->unit = sparse::normalize(std::move(unit));
  d->star.reserve(dim);
  for (auto& col : star_columns) d->star.push_back(sparse::normalize(std::move(col)));
  d->structure = std::make_unique<ExplicitStructure>(dim, constants);
  d->index_labels();
  return Algebra(std::move(d));
}

Algebra Algebra::tensor(const Algebra& A, const Algebra& B) {
  auto d = std::make_shared<detail::AlgebraData>();
  d->kind = detail::Kind::kTensor;
  d->dim = A.dim() * B.dim();
  d->conductor = CycloField::lcm_conductor(A.conductor(), B.conductor());
  const auto db = static_cast<Index>(B.dim());
  for (const auto& [i, ci] : A.unit())
    for (const auto& [j, cj] : B.unit()) d->unit.emplace_back(i * db + j, ci * cj);
  d->structure = std::make_unique<TensorStructure>(A.structure(), B.structure());
  d->factors.emplace(A, B);
  return Algebra(std::move(d));
}

std::size_t Algebra::dim() const { return d_->dim; }
std::uint32_t Algebra::conductor() const { return d_->conductor; }

std::string Algebra::label(Index i) const {
  if (i >= d_->dim) throw std::out_of_range("basis index out of range");
  if (d_->kind == detail::Kind::kTensor) {
    const auto& [A, B] = *d_->factors;
    const auto db = static_cast<Index>(B.dim());
    return A.label(i / db) + "⊗" + B.label(i % db);
  }
  return d_->labels[i];
}

std::vector<std::string> Algebra::labels() const {
  std::vector<std::string> out;
  out.reserve(dim());
  for (Index i = 0; i < dim(); ++i) out.push_back(label(i));
  return out;
}

const Terms& Algebra::unit() const { return d_->unit; }

Terms Algebra::star_basis(Index i) const {
  switch (d_->kind) {
    case detail::Kind::kMultimatrix: {
      const auto& blocks = d_->blocks;
      auto it = std::upper_bound(blocks.begin(), blocks.end(), i,
                                 [](Index k, const Block& b) { return k < b.offset; });
      const Block& B = *std::prev(it);
      const Index r = i - B.offset;
      return {{B.offset + (r % B.size) * B.size + r / B.size, CycloNum(1)}};
    }
    case detail::Kind::kExplicit:
      return d_->star[i];
    case detail::Kind::kTensor: {
      const auto& [A, B] = *d_->factors;
      const auto db = static_cast<Index>(B.dim());
      Terms out;
      for (const auto& [ka, ca] : A.star_basis(i / db))
        for (const auto& [kb, cb] : B.star_basis(i % db)) out.emplace_back(ka * db + kb, ca * cb);
      return sparse::normalize(std::move(out));
    }
  }
  return {};
}

const Structure& Algebra::structure() const { return *d_->structure; }
const std::vector<Block>& Algebra::blocks() const { return d_->blocks; }
std::optional<std::pair<Algebra, Algebra>> Algebra::factors() const { return d_->factors; }

Index Algebra::index_of(const std::string& label) const {
  auto it = d_->label_index.find(label);
  if (it == d_->label_index.end()) throw std::out_of_range("unknown basis label: " + label);
  return it->second;
}

// ---------------------------------------------------------------------------
// AlgElement

AlgElement::AlgElement(Algebra alg, Terms terms) : alg_(std::move(alg)), terms_(sparse::normalize(std::move(terms))) {
  if (!terms_.empty() && terms_.back().first >= alg_.dim()) throw std::out_of_range("element index out of range");
}

AlgElement AlgElement::basis(const Algebra& alg, Index i, const CycloNum& c) {
  if (i >= alg.dim()) throw std::out_of_range("basis index out of range");
  AlgElement e(alg);
  if (!c.is_zero()) e.terms_.emplace_back(i, c);
  return e;
}

AlgElement AlgElement::unit(const Algebra& alg) {
  AlgElement e(alg);
  e.terms_ = alg.unit();
  return e;
}

AlgElement AlgElement::scalar(const Algebra& alg, const CycloNum& c) { return unit(alg) * c; }

AlgElement AlgElement::operator-() const {
  AlgElement r(alg_);
  r.terms_ = sparse::negate(terms_);
  return r;
}

namespace {
void require_same(const Algebra& a, const Algebra& b) {
  if (!(a == b)) throw std::invalid_argument("algebra mismatch");
}
}  // namespace

AlgElement& AlgElement::operator+=(const AlgElement& rhs) {
  require_same(alg_, rhs.alg_);
  terms_ = sparse::add(terms_, rhs.terms_);
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& rhs) {
  require_same(alg_, rhs.alg_);
  terms_ = sparse::sub(terms_, rhs.terms_);
  return *this;
}

AlgElement& AlgElement::operator*=(const CycloNum& c) {
  terms_ = sparse::scale(terms_, c);
  return *this;
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  require_same(a.alg_, b.alg_);
  AlgElement r(a.alg_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  Accumulator acc(a.alg_.dim());
  a.alg_.structure().multiply(a.terms_, b.terms_, acc);
  r.terms_ = acc.take();
  return r;
}

bool operator==(const AlgElement& a, const AlgElement& b) { return a.alg_ == b.alg_ && a.terms_ == b.terms_; }

AlgElement AlgElement::star() const {
  Accumulator acc(alg_.dim());
  for (const auto& [i, c] : terms_) acc.add_terms(alg_.star_basis(i), c.conj());
  return AlgElement(alg_, acc.take());
}

AlgElement AlgElement::pow(unsigned k) const {
  AlgElement result = unit(alg_);
  AlgElement base(*this);
  while (k != 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return result;
}

bool AlgElement::is_normal() const {
  const AlgElement s = star();
  return (*this) * s == s * (*this);
}

bool AlgElement::commutes_with(const AlgElement& other) const { return (*this) * other == other * (*this); }

std::string AlgElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ") " << alg_.label(i);
    first = false;
  }
  return os.str();
}

AlgElement elem_tensor(const AlgElement& a, const AlgElement& b, const Algebra& AB) {
  const auto f = AB.factors();
  if (!f || !(f->first == a.algebra()) || !(f->second == b.algebra()))
    throw std::invalid_argument("tensor algebra does not match the factors");
  const auto db = static_cast<Index>(b.algebra().dim());
  Terms out;
  out.reserve(a.nnz() * b.nnz());
  for (const auto& [i, ci] : a.terms())
    for (const auto& [j, cj] : b.terms()) out.emplace_back(i * db + j, ci * cj);
  return AlgElement(AB, std::move(out));
}

// ---------------------------------------------------------------------------
// LinearMap

Terms LinearMap::apply(const Terms& x) const {
  Accumulator acc(target.dim());
  for (const auto& [i, c] : x) acc.add_terms(columns.at(i), c);
  return acc.take();
}

AlgElement LinearMap::apply(const AlgElement& x) const {
  require_same(x.algebra(), source);
  return AlgElement(target, apply(x.terms()));
}

// ---------------------------------------------------------------------------
// Numerics

CycloMatrix left_regular(const AlgElement& a) {
  const Algebra& alg = a.algebra();
  const std::size_t n = alg.dim();
  CycloMatrix m(n, n);
  for (Index j = 0; j < n; ++j) {
    const AlgElement col = a * AlgElement::basis(alg, j);
    for (const auto& [k, c] : col.terms()) m(k, j) = c;
  }
  return m;
}

namespace {

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() == 1) return {m(0, 0)};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

Spectrum spectrum(const AlgElement& a, double tol) {
  Spectrum out;
  const Algebra& alg = a.algebra();
  if (alg.is_multimatrix()) {
    for (const Block& B : alg.blocks()) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(B.size, B.size);
      auto it = std::lower_bound(a.terms().begin(), a.terms().end(), B.offset,
                                 [](const Term& t, Index k) { return t.first < k; });
      for (; it != a.terms().end() && it->first < B.offset + B.size * B.size; ++it) {
        const Index r = it->first - B.offset;
        m(r / B.size, r % B.size) = it->second.embed();
      }
      for (const auto& ev : eigenvalues(m))
        for (Index k = 0; k < B.size; ++k) out.raw.push_back(ev);
    }
  } else {
    const CycloMatrix lr = left_regular(a);
    Eigen::MatrixXcd m(lr.rows(), lr.cols());
    for (std::size_t i = 0; i < lr.rows(); ++i)
      for (std::size_t j = 0; j < lr.cols(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = lr(i, j).embed();
    out.raw = eigenvalues(m);
  }
  out.normal = a.is_normal();
  for (const auto& ev : out.raw) {
    auto hit = std::find_if(out.merged.begin(), out.merged.end(),
                            [&](const auto& p) { return std::abs(p.first - ev) <= tol; });
    if (hit == out.merged.end()) {
      out.merged.emplace_back(ev, 1);
    } else {
      ++hit->second;
    }
  }
  for (auto& [v, mult] : out.merged) {
    if (std::abs(v.real()) <= tol) v.real(0.0);
    if (std::abs(v.imag()) <= tol) v.imag(0.0);
  }
  std::sort(out.merged.begin(), out.merged.end(), [tol](const auto& x, const auto& y) {
    if (std::abs(x.first.real() - y.first.real()) > tol) return x.first.real() < y.first.real();
    return x.first.imag() < y.first.imag();
  });
  return out;
}

std::size_t rank_float(const std::vector<Terms>& vectors, std::size_t dim, double tol) {
  if (vectors.empty()) return 0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t c = 0; c < vectors.size(); ++c)
    for (const auto& [i, v] : vectors[c]) m(i, static_cast<Eigen::Index>(c)) = v.embed();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  qr.setThreshold(tol);
  return static_cast<std::size_t>(qr.rank());
}

}  // namespace fqg
