#include "fqg/sparse.hpp"

#include <algorithm>

namespace fqg {

Accumulator::Accumulator(std::size_t dim) : dim_(dim), dense_(dim <= kDenseLimit) {
  if (dense_) {
    slots_.resize(dim);
    used_.assign(dim, 0);
  }
}

void Accumulator::add(Index i, const CycloNum& c) {
  if (c.is_zero()) return;
  if (dense_) {
    if (!used_[i]) {
      used_[i] = 1;
      touched_.push_back(i);
      slots_[i] = c;
    } else {
      slots_[i] += c;
    }
  } else {
    auto [it, inserted] = map_.try_emplace(i, c);
    if (!inserted) it->second += c;
  }
}

void Accumulator::add_product(Index i, const CycloNum& a, const CycloNum& b) {
  if (a.is_zero() || b.is_zero()) return;
  add(i, a * b);
}

void Accumulator::add_terms(const Terms& terms, const CycloNum& scale) {
  if (scale.is_zero()) return;
  if (scale.is_one()) {
    for (const auto& [i, c] : terms) add(i, c);
  } else {
    for (const auto& [i, c] : terms) add(i, c * scale);
  }
}

Terms Accumulator::take() {
  Terms out;
  if (dense_) {
    std::sort(touched_.begin(), touched_.end());
    out.reserve(touched_.size());
    for (Index i : touched_) {
      if (!slots_[i].is_zero()) out.emplace_back(i, std::move(slots_[i]));
      slots_[i] = CycloNum();
      used_[i] = 0;
    }
    touched_.clear();
  } else {
    out.reserve(map_.size());
    for (auto& [i, c] : map_)
      if (!c.is_zero()) out.emplace_back(i, std::move(c));
    map_.clear();
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  }
  return out;
}

namespace sparse {

Terms normalize(Terms terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  Terms out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second.is_zero()) out.pop_back();
  return out;
}

Terms add(const Terms& a, const Terms& b) {
  Terms out;
  out.reserve(a.size() + b.size());
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() || y != b.end()) {
    if (y == b.end() || (x != a.end() && x->first < y->first)) {
      out.push_back(*x++);
    } else if (x == a.end() || y->first < x->first) {
      out.push_back(*y++);
    } else {
      CycloNum s = x->second + y->second;
      if (!s.is_zero()) out.emplace_back(x->first, std::move(s));
      ++x;
      ++y;
    }
  }
  return out;
}

Terms negate(const Terms& a) {
  Terms out(a);
  for (auto& t : out) t.second = -t.second;
  return out;
}

Terms sub(const Terms& a, const Terms& b) { return add(a, negate(b)); }

Terms scale(const Terms& a, const CycloNum& c) {
  if (c.is_zero()) return {};
  Terms out;
  out.reserve(a.size());
  for (const auto& [i, v] : a) {
    CycloNum p = v * c;
    if (!p.is_zero()) out.emplace_back(i, std::move(p));
  }
  return out;
}

CycloNum coeff(const Terms& a, Index i) {
  auto it = std::lower_bound(a.begin(), a.end(), i, [](const Term& t, Index k) { return t.first < k; });
  if (it != a.end() && it->first == i) return it->second;
  return CycloNum();
}

CycloNum dot_dense(const Terms& a, const std::vector<CycloNum>& w) {
  CycloNum acc;
  for (const auto& [i, c] : a)
    if (!w[i].is_zero()) acc += c * w[i];
  return acc;
}

CycloNum dot(const Terms& a, const Terms& w) {
  CycloNum acc;
  auto x = a.begin();
  auto y = w.begin();
  while (x != a.end() && y != w.end()) {
    if (x->first < y->first) {
      ++x;
    } else if (y->first < x->first) {
      ++y;
    } else {
      acc += x->second * y->second;
      ++x;
      ++y;
    }
  }
  return acc;
}

}  // namespace sparse
}  // namespace fqg
