#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bjorth/config.hpp"
#include "bjorth/errors.hpp"
#include "bjorth/matrix.hpp"

namespace bjorth {

struct EigResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // unitary, column i pairs with values[i]
};

namespace detail {

// One complex Jacobi rotation zeroing H(p,q).  H is updated in place as
// J* H J and the rotation is accumulated into V as V J.
inline void jacobi_rotate(Matrix& h, Matrix& v, std::size_t p, std::size_t q) {
  const cd apq = h(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cd phase = apq / r;  // e^{i beta}
  const double app = h(p, p).real();
  const double aqq = h(q, q).real();
  const double tau = (app - aqq) / (2.0 * r);
  double t;
  if (tau >= 0.0) {
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  } else {
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cd sp = s * phase;        // s e^{i beta}
  const cd spc = std::conj(sp);   // s e^{-i beta}

  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i) {  // columns p,q of H
    const cd hip = h(i, p), hiq = h(i, q);
    h(i, p) = c * hip + spc * hiq;
    h(i, q) = -sp * hip + c * hiq;
  }
  for (std::size_t j = 0; j < n; ++j) {  // rows p,q of H
    const cd hpj = h(p, j), hqj = h(q, j);
    h(p, j) = c * hpj + sp * hqj;
    h(q, j) = -spc * hpj + c * hqj;
  }
  h(p, q) = 0.0;
  h(q, p) = 0.0;
  h(p, p) = cd(h(p, p).real(), 0.0);
  h(q, q) = cd(h(q, q).real(), 0.0);
  for (std::size_t i = 0; i < v.rows(); ++i) {  // accumulate V J
    const cd vip = v(i, p), viq = v(i, q);
    v(i, p) = c * vip + spc * viq;
    v(i, q) = -sp * vip + c * viq;
  }
}

}  // namespace detail

// Hermitian eigendecomposition by cyclic Jacobi rotations.
// Returns eigenvalues ascending with matching eigenvector columns.
inline EigResult herm_eig(const Matrix& h_in, const ToleranceConfig& cfg = {}) {
  if (!h_in.is_square()) throw DimensionError("herm_eig: matrix not square");
  require_finite(h_in, "herm_eig");
  const double scale = h_in.frobenius();
  if (herm_defect(h_in) > cfg.relTol * std::max(1.0, scale)) {
    throw NotHermitianError("herm_eig: matrix is not Hermitian within tolerance");
  }

  const std::size_t n = h_in.rows();
  Matrix h = herm_part(h_in);  // kill representation drift before iterating
  Matrix v = Matrix::identity(n);
  EigResult out;
  out.values.assign(n, 0.0);

  if (scale > 0.0 && n > 1) {
    const double thresh = 2.3e-16 * scale;
    for (int sweep = 0; sweep < 60; ++sweep) {
      double largest = 0.0;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double off = std::abs(h(p, q));
          largest = std::max(largest, off);
          if (off > thresh) detail::jacobi_rotate(h, v, p, q);
        }
      }
      if (largest <= thresh) break;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });
  Matrix vectors(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = h(order[j], order[j]).real();
    vectors.set_col(j, v.col(order[j]));
  }
  out.vectors = vectors;
  return out;
}

// Smallest eigenvalue of the Hermitian part-validated matrix (convenience).
inline double min_eigenvalue(const Matrix& h, const ToleranceConfig& cfg = {}) {
  return herm_eig(h, cfg).values.front();
}

}  // namespace bjorth
