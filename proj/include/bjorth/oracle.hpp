#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bjorth/bj.hpp"
#include "bjorth/config.hpp"
#include "bjorth/errors.hpp"
#include "bjorth/hull.hpp"
#include "bjorth/linalg.hpp"
#include "bjorth/matrix.hpp"
#include "bjorth/minimize.hpp"
#include "bjorth/rng.hpp"
#include "bjorth/svd.hpp"

namespace bjorth {

// Brute-force cross-validators and seeded instance generators.  The oracle
// verdicts come exclusively from direct norm evaluations over grids, sampled
// points, and descent refinements; the deciders reach their verdicts through
// spectral criteria (numerical ranges, singular values), so agreement between
// the two is evidence rather than tautology.

enum class Ensemble {
  GaussianDense,
  DiagonalDominant,
  Projection,
  Unitary,
  PsdProduct,  // pairs with x* y positive semidefinite
  BjPair,      // pairs Birkhoff-James orthogonal by construction
};

struct InstanceGenSpec {
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  Ensemble ensemble = Ensemble::GaussianDense;
};

struct Instance {
  Matrix x;
  Matrix y;
};

// Deterministic instance stream: identical spec, identical sequence.
class InstanceStream {
 public:
  explicit InstanceStream(const InstanceGenSpec& spec) : spec_(spec), rng_(spec.seed) {
    if (spec.dim < 1 || spec.dim > 8) {
      throw DimensionError("InstanceStream: dimension must lie in [1, 8]");
    }
  }

  Instance next() {
    Instance inst;
    const std::size_t n = spec_.dim;
    switch (spec_.ensemble) {
      case Ensemble::GaussianDense:
        inst.x = rng_.gaussian_matrix(n, n);
        inst.y = rng_.gaussian_matrix(n, n);
        break;
      case Ensemble::DiagonalDominant:
        inst.x = diag_dominant();
        inst.y = diag_dominant();
        break;
      case Ensemble::Projection:
        inst.x = projection();
        inst.y = projection();
        break;
      case Ensemble::Unitary:
        inst.x = haar_unitary(n, rng_);
        inst.y = haar_unitary(n, rng_);
        break;
      case Ensemble::PsdProduct:
        inst = psd_product();
        break;
      case Ensemble::BjPair:
        inst = bj_pair();
        break;
    }
    ++count_;
    return inst;
  }

 private:
  Matrix nonzero_gaussian() {
    Matrix g = rng_.gaussian_matrix(spec_.dim, spec_.dim);
    while (op_norm(g) == 0.0) g = rng_.gaussian_matrix(spec_.dim, spec_.dim);
    return g;
  }

  // Strict row diagonal dominance: overwrite each diagonal entry with the
  // off-diagonal absolute row sum plus a positive bump.
  Matrix diag_dominant() {
    Matrix g = rng_.gaussian_matrix(spec_.dim, spec_.dim);
    for (std::size_t i = 0; i < spec_.dim; ++i) {
      double rowsum = 0.0;
      for (std::size_t j = 0; j < spec_.dim; ++j) {
        if (j != i) rowsum += std::abs(g(i, j));
      }
      g(i, i) = cd(rowsum + rng_.uniform(0.5, 1.5), 0.0);
    }
    return g;
  }

  Matrix projection() {
    const std::size_t k = 1 + static_cast<std::size_t>(rng_.bits() % spec_.dim);
    Matrix q = orthonormalize(rng_.gaussian_matrix(spec_.dim, k));
    while (q.cols() < k) q = orthonormalize(rng_.gaussian_matrix(spec_.dim, k));
    return q * q.adjoint();
  }

  // Pairs whose product x* y is PSD by construction: y = (x*)^+ P gives
  // x* y = P for invertible x.  Instances alternate between strictly
  // positive P (orthogonality fails decisively) and P annihilating a
  // norm-attaining vector of x (orthogonality holds with a witness).
  Instance psd_product() {
    Matrix x = nonzero_gaussian();
    while (min_modulus(x) < 0.05 * op_norm(x)) x = nonzero_gaussian();
    const Matrix g = rng_.gaussian_matrix(spec_.dim, spec_.dim);
    Matrix p;
    if (count_ % 2 == 0) {
      p = g.adjoint() * g;
      const double bump = 0.1 * std::max(p.trace().real() / spec_.dim, 1.0);
      p += Matrix::identity(spec_.dim) * cd(bump, 0.0);
    } else {
      const SvdResult sx = svd(x);
      const Matrix xi0 = sx.v.col(0);  // norm-attaining direction of x
      const Matrix h = g * (Matrix::identity(spec_.dim) - xi0 * xi0.adjoint());
      p = h.adjoint() * h;
    }
    Instance inst;
    inst.x = x;
    inst.y = pinv(x).adjoint() * herm_part(p);
    return inst;
  }

  // Pairs Birkhoff-James orthogonal by construction: subtract from a random
  // second element the rank-one piece that makes the compressed product's
  // diagonal entry at the top singular direction vanish, which places zero
  // inside the numerical range.
  Instance bj_pair() {
    Instance inst;
    inst.x = nonzero_gaussian();
    const SvdResult sx = svd(inst.x);
    const Matrix xi = sx.v.col(0);
    const Matrix top = inst.x * xi;
    const Matrix s0 = rng_.gaussian_matrix(spec_.dim, spec_.dim);
    const cd w0 = vdot(s0 * xi, top);
    const Matrix unitEntry = (top * xi.adjoint()) * cd(1.0 / vdot(top, top).real(), 0.0);
    inst.y = s0 - unitEntry * std::conj(w0);
    return inst;
  }

  InstanceGenSpec spec_;
  Rng rng_;
  std::size_t count_ = 0;
};

inline InstanceStream generate(const InstanceGenSpec& spec) { return InstanceStream(spec); }

// Result of brute-force minimization of ||T + lambda S|| over complex lambda.
struct OracleBjResult {
  double minNorm = 0.0;
  cd lambda{0.0, 0.0};
  bool orthogonal = false;  // minNorm >= ||T|| (1 - 1e-6)
};

// Exhaustive polar grid plus a derivative-free polish of the best grid point.
// The default radius (2 ||T|| / ||S||) covers every possible minimizer: beyond
// it the reverse triangle inequality puts the norm above ||T||.
inline OracleBjResult oracle_bj(const Matrix& t, const Matrix& s, double gridRadius = 0.0,
                                std::size_t gridSteps = 64) {
  require_same_shape(t, s, "oracle_bj");
  require_finite(t, "oracle_bj");
  require_finite(s, "oracle_bj");
  if (gridSteps < 64) throw std::invalid_argument("oracle_bj: gridSteps must be at least 64");
  const double nt = op_norm(t), ns = op_norm(s);

  OracleBjResult out;
  out.minNorm = nt;
  if (ns == 0.0 || nt == 0.0) {
    out.minNorm = (nt == 0.0) ? 0.0 : nt;
    out.orthogonal = true;
    return out;
  }
  if (gridRadius <= 0.0) gridRadius = 2.0 * nt / ns;

  auto f = [&](cd z) { return op_norm(t + s * z); };
  const std::size_t radial = gridSteps / 2;
  const double tau = 6.283185307179586476925286766559;
  for (std::size_t k = 0; k < gridSteps; ++k) {
    const double ang = tau * static_cast<double>(k) / static_cast<double>(gridSteps);
    const cd dir(std::cos(ang), std::sin(ang));
    for (std::size_t j = 1; j <= radial; ++j) {
      const cd z = dir * (gridRadius * static_cast<double>(j) / static_cast<double>(radial));
      const double v = f(z);
      if (v < out.minNorm) {
        out.minNorm = v;
        out.lambda = z;
      }
    }
  }

  const double cell = gridRadius / static_cast<double>(radial);
  const ComplexMinResult polish =
      minimize_complex(f, {out.lambda}, 2.0 * cell, 1e-11 * (1.0 + gridRadius),
                       gridRadius * (1.0 + 1e-9));
  if (polish.value < out.minNorm) {
    out.minNorm = polish.value;
    out.lambda = polish.arg;
  }
  out.orthogonal = out.minNorm >= nt * (1.0 - 1e-6);
  return out;
}

// Result of brute-force minimization of ||x + y a|| over algebra elements a.
struct OracleStrongResult {
  double minNorm = 0.0;
  Matrix minimizer;
  bool orthogonal = false;  // minNorm >= ||x|| (1 - 1e-6)
};

// Pseudoinverse seed, a scalar grid along it, seeded random elements, then a
// diminishing-step subgradient refinement of the best candidate (the top
// singular pair of x + y a steers the step; verdict values are plain norms).
inline OracleStrongResult oracle_strong_bj(const Matrix& x, const Matrix& y,
                                           std::size_t samples, std::uint64_t seed) {
  require_same_shape(x, y, "oracle_strong_bj");
  require_finite(x, "oracle_strong_bj");
  require_finite(y, "oracle_strong_bj");
  if (samples < 1000) {
    throw std::invalid_argument("oracle_strong_bj: samples must be at least 1000");
  }
  const double nx = op_norm(x), ny = op_norm(y);
  const std::size_t n = x.cols();

  OracleStrongResult out;
  out.minNorm = nx;
  out.minimizer = Matrix(n, n);
  if (nx == 0.0 || ny == 0.0) {
    out.orthogonal = true;
    return out;
  }

  auto f = [&](const Matrix& a) { return op_norm(x + y * a); };
  auto consider = [&](const Matrix& a) {
    const double v = f(a);
    if (v < out.minNorm) {
      out.minNorm = v;
      out.minimizer = a;
    }
  };

  const Matrix apinv = -(pinv(y) * x);
  const double ballRadius = 2.0 * std::max(op_norm(apinv), nx / ny);
  for (int j = 0; j <= 32; ++j) consider(apinv * cd(j / 16.0, 0.0));

  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Matrix g = rng.gaussian_matrix(n, n);
    const double ng = op_norm(g);
    if (ng == 0.0) continue;
    consider(g * cd(ballRadius * rng.uniform() / ng, 0.0));
  }

  Matrix a = out.minimizer;
  const double step0 = 0.25 * std::max(ballRadius, 1e-12);
  for (int it = 0; it < 100; ++it) {
    const SvdResult sv = svd(x + y * a);
    const Matrix grad = y.adjoint() * (sv.u.col(0) * sv.v.col(0).adjoint());
    const double gn = grad.frobenius();
    if (gn == 0.0) break;
    a -= grad * cd(step0 / (gn * std::sqrt(it + 1.0)), 0.0);
    consider(a);
  }
  out.orthogonal = out.minNorm >= nx * (1.0 - 1e-6);
  return out;
}

// Sampled numerical range with convex-hull membership of zero.  The hull of
// sampled points ksi* C ksi is always contained in the true range (which is
// convex), so an inside verdict is sound while an outside margin carries the
// sampling deficit of the hull.
struct OracleRangeResult {
  std::vector<cd> hull;
  double margin = 0.0;  // signed distance of 0 to the hull, negative inside
  bool inside = false;
};

inline OracleRangeResult oracle_numrange(const Matrix& c, std::size_t samples,
                                         std::uint64_t seed) {
  if (!c.is_square()) throw DimensionError("oracle_numrange: matrix must be square");
  require_finite(c, "oracle_numrange");
  if (samples < 10000) {
    throw std::invalid_argument("oracle_numrange: samples must be at least 10000");
  }
  Rng rng(seed);
  std::vector<cd> pts;
  pts.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const Matrix xi = rng.unit_vector(c.rows());
    pts.push_back(vdot(xi, c * xi));
  }
  OracleRangeResult out;
  out.hull = convex_hull(pts);
  out.margin = signed_origin_margin(out.hull);
  out.inside = out.margin <= 0.0;
  return out;
}

}  // namespace bjorth
