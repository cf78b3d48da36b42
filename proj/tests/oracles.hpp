#pragma once

// Floating-point reference computations used as independent routes in tests.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "fqg/algebra.hpp"
#include "fqg/qgroup.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Element of a multimatrix algebra as one dense complex matrix per block.
inline std::vector<Mat> to_blocks(const fqg::AlgElement& a) {
  std::vector<Mat> out;
  for (const auto& b : a.algebra().blocks()) out.push_back(Mat::Zero(b.size, b.size));
  const auto& blocks = a.algebra().blocks();
  for (const auto& [i, c] : a.terms()) {
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const auto& b = blocks[k];
      if (i >= b.offset && i < b.offset + b.size * b.size) {
        const auto r = (i - b.offset) / b.size, s = (i - b.offset) % b.size;
        out[k](r, s) = c.embed();
      }
    }
  }
  return out;
}

inline std::vector<Mat> multiply(const std::vector<Mat>& x, const std::vector<Mat>& y) {
  std::vector<Mat> out;
  for (std::size_t k = 0; k < x.size(); ++k) out.push_back(x[k] * y[k]);
  return out;
}

/// h(x) = sum of basis weights times the matching matrix entries.
inline cplx haar(const fqg::QuantumGroup& G, const std::vector<Mat>& x) {
  cplx acc = 0;
  const auto& blocks = G.algebra().blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (fqg::Index p = 0; p < blocks[k].size; ++p)
      for (fqg::Index q = 0; q < blocks[k].size; ++q)
        acc += G.haar_weights()[blocks[k].offset + p * blocks[k].size + q].embed() * x[k](p, q);
  return acc;
}

/// h(x_1 ... x_r) in floating point.
inline cplx haar_word(const fqg::QuantumGroup& G, const std::vector<fqg::AlgElement>& factors) {
  std::vector<Mat> acc;
  for (const auto& b : G.algebra().blocks()) acc.push_back(Mat::Identity(b.size, b.size));
  for (const auto& f : factors) acc = multiply(acc, to_blocks(f));
  return haar(G, acc);
}

/// Left multiplication by a, assembled in floating point from the structure
/// constants; works for any algebra.
inline Mat regular_matrix(const fqg::AlgElement& a) {
  const auto d = a.algebra().dim();
  std::vector<cplx> coeff(d, 0.0);
  for (const auto& [i, c] : a.terms()) coeff[i] = c.embed();
  Mat L = Mat::Zero(d, d);
  a.algebra().structure().for_each_constant([&](fqg::Index i, fqg::Index j, fqg::Index k, const fqg::CycloNum& c) {
    L(k, j) += coeff[i] * c.embed();
  });
  return L;
}

/// h(x_1 ... x_r) through the regular representation.
inline cplx haar_word_regular(const fqg::QuantumGroup& G, const std::vector<fqg::AlgElement>& factors) {
  const auto d = G.dim();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  for (const auto& [i, c] : G.algebra().unit()) v(i) = c.embed();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) v = regular_matrix(*it) * v;
  cplx acc = 0;
  for (std::size_t i = 0; i < d; ++i) acc += G.haar_weights()[i].embed() * v(i);
  return acc;
}

}  // namespace oracle
