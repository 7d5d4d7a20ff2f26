#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bjorth/errors.hpp"
#include "bjorth/matrix.hpp"

namespace bjorth {

struct SvdResult {
  Matrix u;                   // m x k, orthonormal columns
  std::vector<double> sigma;  // descending, length k = min(m, n)
  Matrix v;                   // n x k, orthonormal columns
};

namespace detail {

// Rotates columns p,q of w (and v) so that they become orthogonal.
// The rotation diagonalizes the 2x2 Gram block [[a, d], [conj(d), b]].
inline void onesided_rotate(Matrix& w, Matrix& v, std::size_t p, std::size_t q,
                            double a, double b, cd d) {
  const double r = std::abs(d);
  const cd phase = d / r;  // e^{i beta}
  const double tau = (a - b) / (2.0 * r);
  double t;
  if (tau >= 0.0) {
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  } else {
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cd sp = s * phase;
  const cd spc = std::conj(sp);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const cd wip = w(i, p), wiq = w(i, q);
    w(i, p) = c * wip + spc * wiq;
    w(i, q) = -sp * wip + c * wiq;
  }
  for (std::size_t i = 0; i < v.rows(); ++i) {
    const cd vip = v(i, p), viq = v(i, q);
    v(i, p) = c * vip + spc * viq;
    v(i, q) = -sp * vip + c * viq;
  }
}

// Gram-Schmidt completion: returns a unit vector orthogonal to the first
// `used` columns of u (coordinate candidates, two orthogonalization passes).
inline Matrix complete_column(const Matrix& u, std::size_t used) {
  const std::size_t m = u.rows();
  for (std::size_t cand = 0; cand < m; ++cand) {
    Matrix e = Matrix::basis(m, cand);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < used; ++j) {
        const Matrix uj = u.col(j);
        e -= uj * vdot(uj, e);
      }
    }
    const double nn = vnorm(e);
    if (nn > 0.25) return e * cd(1.0 / nn, 0.0);
  }
  throw DegenerateOperatorError("svd: cannot complete orthonormal basis");
}

}  // namespace detail

// Singular value decomposition A = U diag(sigma) V* via one-sided Jacobi:
// columns of A are rotated pairwise until mutually orthogonal, the rotations
// are accumulated into V, column norms become the singular values.  The
// pairwise convergence test is relative, so the factors stay orthonormal to
// machine precision even for tiny singular values.
inline SvdResult svd(const Matrix& a) {
  require_finite(a, "svd");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = std::min(m, n);

  Matrix w = a;
  Matrix v = Matrix::identity(n);
  if (n > 1) {
    const double tol = 1e-14;
    for (int sweep = 0; sweep < 60; ++sweep) {
      bool rotated = false;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          double pa = 0.0, pb = 0.0;
          cd d = 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            pa += std::norm(w(i, p));
            pb += std::norm(w(i, q));
            d += std::conj(w(i, p)) * w(i, q);
          }
          if (pa == 0.0 || pb == 0.0) continue;
          if (std::abs(d) <= tol * std::sqrt(pa) * std::sqrt(pb)) continue;
          detail::onesided_rotate(w, v, p, q, pa, pb, d);
          rotated = true;
        }
      }
      if (!rotated) break;
    }
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = vnorm(w.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out;
  out.sigma.resize(k);
  out.u = Matrix(m, k);
  out.v = Matrix(n, k);
  const double smax = norms[order[0]];
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = norms[src];
    out.v.set_col(j, v.col(src));
    if (norms[src] > smax * 1e-15 && norms[src] > 0.0) {
      out.u.set_col(j, w.col(src) * cd(1.0 / norms[src], 0.0));
    } else {
      out.u.set_col(j, detail::complete_column(out.u, j));
    }
  }
  return out;
}

}  // namespace bjorth
