#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bjorth/eig.hpp"
#include "bjorth/matrix.hpp"

namespace bjorth {

// Golden-section minimization of a scalar function on [lo, hi].
template <typename F>
double golden_section(F&& f, double lo, double hi, double tol) {
  static const double inv_phi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

struct ComplexMinResult {
  cd arg{0.0, 0.0};
  double value = std::numeric_limits<double>::infinity();
  long evals = 0;
};

// Minimizes a convex real function over the complex plane, optionally clipped
// to a disk |z| <= clip_radius.  Eight-direction pattern search with shrinking
// radius, then a coordinate-wise golden-section polish.  Derivative-free, so
// kinks of operator-norm objectives are harmless.
template <typename F>
ComplexMinResult minimize_complex(F&& f, const std::vector<cd>& seeds, double radius0,
                                  double tol,
                                  double clip_radius = std::numeric_limits<double>::infinity()) {
  static const double dirs_re[8] = {1, -1, 0, 0, 0.7071067811865476, 0.7071067811865476,
                                    -0.7071067811865476, -0.7071067811865476};
  static const double dirs_im[8] = {0, 0, 1, -1, 0.7071067811865476, -0.7071067811865476,
                                    0.7071067811865476, -0.7071067811865476};
  ComplexMinResult best;
  auto clip = [&](cd z) {
    const double m = std::abs(z);
    if (m > clip_radius) z *= clip_radius / m;
    return z;
  };

  for (cd seed : seeds) {
    cd x = clip(seed);
    double fx = f(x);
    ++best.evals;
    double r = std::max(radius0, tol);
    while (r > tol * (1.0 + std::abs(x))) {
      bool moved = false;
      for (int d = 0; d < 8; ++d) {
        const cd cand = clip(x + cd(r * dirs_re[d], r * dirs_im[d]));
        const double fc = f(cand);
        ++best.evals;
        if (fc < fx) {
          x = cand;
          fx = fc;
          moved = true;
        }
      }
      if (!moved) r *= 0.5;
    }
    // Coordinate polish around the pattern-search result.
    const double w = std::max(64.0 * tol * (1.0 + std::abs(x)), 4.0 * tol);
    for (int round = 0; round < 3; ++round) {
      const double re = golden_section(
          [&](double t) { ++best.evals; return f(clip(cd(t, x.imag()))); },
          x.real() - w, x.real() + w, tol);
      x = clip(cd(re, x.imag()));
      const double im = golden_section(
          [&](double t) { ++best.evals; return f(clip(cd(x.real(), t))); },
          x.imag() - w, x.imag() + w, tol);
      x = clip(cd(x.real(), im));
    }
    fx = f(x);
    ++best.evals;
    if (fx < best.value) {
      best.value = fx;
      best.arg = x;
    }
  }
  return best;
}

// Euclidean projection of a real vector onto the probability simplex.
inline std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  std::size_t rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = i + 1;
      theta = t;
    }
  }
  if (rho == 0) {  // all mass below threshold; fall back to uniform
    std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
    return v;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

// Projection of a square matrix onto the density matrices (Hermitian, PSD,
// unit trace): Hermitianize, then project the spectrum onto the simplex.
inline Matrix project_density(const Matrix& z) {
  const Matrix h = herm_part(z);
  EigResult e = herm_eig(h);
  std::vector<double> lam = project_simplex(e.values);
  Matrix out(h.rows(), h.cols());
  for (std::size_t j = 0; j < lam.size(); ++j) {
    if (lam[j] == 0.0) continue;
    const Matrix vj = e.vectors.col(j);
    out += (vj * vj.adjoint()) * cd(lam[j], 0.0);
  }
  return herm_part(out);
}

}  // namespace bjorth
