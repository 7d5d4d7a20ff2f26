#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "bjorth/config.hpp"
#include "bjorth/eig.hpp"
#include "bjorth/errors.hpp"
#include "bjorth/matrix.hpp"
#include "bjorth/svd.hpp"

namespace bjorth {

// Operator (spectral) norm.  This is also the Hilbert-module norm of a
// rectangular element, since ||<x,x>|| = ||x* x|| = sigma_max(x)^2.
// Small square blocks deliberately go through the Jacobi sweep: the obvious
// 2x2 closed form sqrt((f + sqrt(f^2 - 4g)) / 2) cancels catastrophically
// when the two singular values nearly coincide and loses half the digits,
// while the one-sided sweep only ever sums squares.
inline double op_norm(const Matrix& a) {
  require_finite(a, "op_norm");
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  if (a.rows() == 1 || a.cols() == 1) return a.frobenius();
  return svd(a).sigma.front();
}

// Smallest singular value; zero whenever cols > rows (the map cannot be
// injective, so the lower bound of ||A x|| over unit x is 0).
inline double min_modulus(const Matrix& a) {
  require_finite(a, "min_modulus");
  if (a.cols() > a.rows()) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  return svd(a).sigma.back();
}

// Operator absolute value |A| = (A* A)^{1/2}, assembled from the singular
// decomposition as V diag(sigma) V* and symmetrized.
inline Matrix abs_op(const Matrix& a) {
  require_finite(a, "abs_op");
  const SvdResult s = svd(a);
  const std::size_t n = a.cols();
  Matrix out(n, n);
  for (std::size_t t = 0; t < s.sigma.size(); ++t) {
    const Matrix vt = s.v.col(t);
    const Matrix term = vt * vt.adjoint();
    out += term * cd(s.sigma[t], 0.0);
  }
  return herm_part(out);
}

// Orthonormal basis of the subspace where T attains its norm: the span of the
// right singular vectors whose singular value lies within a relative
// clusterTol of sigma_max.
struct NormAttainSpace {
  Matrix basisQ;          // n x k, orthonormal columns
  double opNorm = 0.0;    // sigma_max
  double restrictedNorm;  // largest singular value excluded from the cluster (0 if none)
  double gap = 0.0;       // opNorm - restrictedNorm
};

inline NormAttainSpace norm_attain_space(const Matrix& t, const ToleranceConfig& cfg = {}) {
  require_finite(t, "norm_attain_space");
  cfg.validate();
  const SvdResult s = svd(t);
  const double smax = s.sigma.front();
  if (!(smax > 0.0)) {
    throw DegenerateOperatorError("norm_attain_space: zero operator has no attaining sphere");
  }
  const double cut = smax * (1.0 - cfg.clusterTol);
  std::size_t k = 0;
  while (k < s.sigma.size() && s.sigma[k] >= cut) ++k;

  NormAttainSpace out;
  out.opNorm = smax;
  out.restrictedNorm = (k < s.sigma.size()) ? s.sigma[k] : 0.0;
  out.gap = smax - out.restrictedNorm;
  Matrix q(t.cols(), k);
  for (std::size_t j = 0; j < k; ++j) q.set_col(j, s.v.col(j));
  out.basisQ = q;
  return out;
}

// Modified Gram-Schmidt orthonormalization of the columns (two passes).
// Columns that vanish after projection are dropped.
inline Matrix orthonormalize(const Matrix& a, double drop_tol = 1e-12) {
  std::vector<Matrix> cols;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Matrix c = a.col(j);
    const double scale = vnorm(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Matrix& u : cols) c -= u * vdot(u, c);
    }
    const double nn = vnorm(c);
    if (nn > drop_tol * std::max(1.0, scale)) cols.push_back(c * cd(1.0 / nn, 0.0));
  }
  if (cols.empty()) throw DegenerateOperatorError("orthonormalize: all columns vanish");
  Matrix q(a.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) q.set_col(j, cols[j]);
  return q;
}

// Orthogonal projector onto the numerical column span of y.
inline Matrix range_projector(const Matrix& y, double rank_tol = 1e-12) {
  const SvdResult s = svd(y);
  const double smax = s.sigma.front();
  Matrix p(y.rows(), y.rows());
  if (!(smax > 0.0)) return p;
  for (std::size_t j = 0; j < s.sigma.size(); ++j) {
    if (s.sigma[j] <= rank_tol * smax) break;
    const Matrix uj = s.u.col(j);
    p += uj * uj.adjoint();
  }
  return herm_part(p);
}

// Moore-Penrose pseudoinverse with relative rank cutoff.
inline Matrix pinv(const Matrix& a, double rank_tol = 1e-12) {
  const SvdResult s = svd(a);
  Matrix out(a.cols(), a.rows());
  const double smax = s.sigma.front();
  if (!(smax > 0.0)) return out;
  for (std::size_t j = 0; j < s.sigma.size(); ++j) {
    if (s.sigma[j] <= rank_tol * smax) break;
    const Matrix vj = s.v.col(j);
    const Matrix uj = s.u.col(j);
    out += (vj * uj.adjoint()) * cd(1.0 / s.sigma[j], 0.0);
  }
  return out;
}

}  // namespace bjorth
