#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bjorth/config.hpp"
#include "bjorth/errors.hpp"
#include "bjorth/linalg.hpp"
#include "bjorth/matrix.hpp"
#include "bjorth/minimize.hpp"
#include "bjorth/numrange.hpp"
#include "bjorth/rng.hpp"

namespace bjorth {

enum class Status { True, False, Uncertain };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::True: return "true";
    case Status::False: return "false";
    default: return "uncertain";
  }
}

// Density matrix (Hermitian, positive semidefinite, unit trace); the matrix
// form of a state on the matrix algebra via c -> tr(P c).
struct DensityMatrix {
  Matrix p;

  void validate(const ToleranceConfig& cfg = {}) const {
    if (!p.is_square()) throw InvalidStateError("DensityMatrix: not square");
    require_finite(p, "DensityMatrix");
    const double scale = std::max(1.0, p.frobenius());
    if (herm_defect(p) > cfg.relTol * scale) {
      throw InvalidStateError("DensityMatrix: not Hermitian within tolerance");
    }
    EigResult e = herm_eig(herm_part(p));
    if (e.values.front() < -cfg.relTol * scale) {
      throw InvalidStateError("DensityMatrix: negative eigenvalue");
    }
    if (std::abs(p.trace().real() - 1.0) > cfg.relTol * scale ||
        std::abs(p.trace().imag()) > cfg.relTol * scale) {
      throw InvalidStateError("DensityMatrix: trace differs from one");
    }
  }
};

// Decision with an optional certificate.  margin is the decisive magnitude of
// the relation at hand (signed support distance for bj_ortho, smallest
// singular value for strong_bj_ortho, product norm for exact_ortho).
struct Verdict {
  Status status = Status::Uncertain;
  double margin = 0.0;
  std::optional<Matrix> witnessVector;
  std::optional<DensityMatrix> witnessState;
};

namespace detail {

inline Verdict trivially_true(const Matrix& xi) {
  Verdict v;
  v.status = Status::True;
  v.margin = 0.0;
  v.witnessVector = xi;
  DensityMatrix d;
  d.p = xi * xi.adjoint();
  v.witnessState = d;
  return v;
}

}  // namespace detail

// Exact orthogonality <x, y> = x* y = 0, decided through ||x* y||.
inline Verdict exact_ortho(const Matrix& x, const Matrix& y, const ToleranceConfig& cfg = {}) {
  require_same_shape(x, y, "exact_ortho");
  require_finite(x, "exact_ortho");
  require_finite(y, "exact_ortho");
  cfg.validate();
  Verdict out;
  const double nx = op_norm(x), ny = op_norm(y);
  if (nx == 0.0 || ny == 0.0) {
    out.status = Status::True;
    out.margin = 0.0;
    return out;
  }
  const double v = op_norm(x.adjoint() * y);
  const double wtol = cfg.witnessTol * nx * ny;
  out.margin = v;
  if (v <= wtol) {
    out.status = Status::True;
  } else if (v <= kUncertainBand * wtol) {
    out.status = Status::Uncertain;
  } else {
    out.status = Status::False;
  }
  return out;
}

// Birkhoff-James orthogonality T perp_B S: ||T + z S|| >= ||T|| for every
// complex z.  Decided through the equivalent finite-dimensional criterion:
// 0 lies in the numerical range of the compression of S* T onto the subspace
// where T attains its norm.  A True verdict carries a unit witness xi with
// ||T xi|| = ||T|| and xi* (S* T) xi = 0 within certificate tolerances.
inline Verdict bj_ortho(const Matrix& t, const Matrix& s, const ToleranceConfig& cfg = {}) {
  require_same_shape(t, s, "bj_ortho");
  require_finite(t, "bj_ortho");
  require_finite(s, "bj_ortho");
  cfg.validate();
  const double nt = op_norm(t), ns = op_norm(s);
  if (nt == 0.0) return detail::trivially_true(Matrix::basis(t.cols(), 0));

  const NormAttainSpace nas = norm_attain_space(t, cfg);
  const Matrix product = s.adjoint() * t;
  const Matrix c = compress(product, nas.basisQ);
  const RangeMembership rm = contains_zero(c, cfg, std::max(nt * ns, 1e-300));

  Verdict out;
  out.margin = rm.margin;
  switch (rm.status) {
    case RangeMembership::Region::Inside: {
      out.status = Status::True;
      const Matrix xi = nas.basisQ * (*rm.witness);
      out.witnessVector = xi;
      DensityMatrix d;
      d.p = xi * xi.adjoint();
      out.witnessState = d;
      break;
    }
    case RangeMembership::Region::Outside:
      out.status = Status::False;
      break;
    default:
      out.status = Status::Uncertain;
  }
  return out;
}

// Strong Birkhoff-James orthogonality T perp^s_B S: ||T + S a|| >= ||T|| for
// every algebra element a.  Equivalent criterion: some unit xi in the
// norm-attaining subspace of T satisfies S* T xi = 0, i.e. the smallest
// singular value of (S* T) Q vanishes.
inline Verdict strong_bj_ortho(const Matrix& t, const Matrix& s,
                               const ToleranceConfig& cfg = {}) {
  require_same_shape(t, s, "strong_bj_ortho");
  require_finite(t, "strong_bj_ortho");
  require_finite(s, "strong_bj_ortho");
  cfg.validate();
  const double nt = op_norm(t), ns = op_norm(s);
  if (nt == 0.0) return detail::trivially_true(Matrix::basis(t.cols(), 0));

  const NormAttainSpace nas = norm_attain_space(t, cfg);
  const Matrix b = (s.adjoint() * t) * nas.basisQ;
  const SvdResult sv = svd(b);
  const double smin = sv.sigma.back();
  const Matrix eta = sv.v.col(sv.v.cols() - 1);
  const Matrix xi = nas.basisQ * eta;

  Verdict out;
  out.margin = smin;
  const double wtol = cfg.witnessTol * std::max(nt * ns, 0.0);
  if (smin <= wtol) {
    out.status = Status::True;
    out.witnessVector = xi;
    DensityMatrix d;
    d.p = xi * xi.adjoint();
    out.witnessState = d;
  } else if (smin <= kUncertainBand * wtol) {
    out.status = Status::Uncertain;
  } else {
    out.status = Status::False;
  }
  return out;
}

// Rank-one state P = xi xi* built from a Birkhoff-James witness; satisfies
// tr(P T* T) = ||T||^2 and tr(P T* S) = 0 within certificate tolerances.
inline DensityMatrix state_witness(const Matrix& t, const Matrix& s,
                                   const ToleranceConfig& cfg = {}) {
  const Verdict v = bj_ortho(t, s, cfg);
  if (v.status != Status::True) {
    throw NotOrthogonalError("state_witness: pair is not Birkhoff-James orthogonal");
  }
  DensityMatrix d = *v.witnessState;
  d.validate(cfg);
  return d;
}

// Seeded complex samples spread over magnitudes up to the given radius; the
// shared sampling scheme for the Pythagorean-type inequality checks.
inline std::vector<cd> sample_lambdas(std::size_t count, double radius, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cd> out;
  out.reserve(count + 1);
  out.push_back(cd(0.0, 0.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double mag = radius * std::pow(10.0, rng.uniform(-4.0, 0.0));
    const double ang = rng.uniform(0.0, 6.283185307179586476925286766559);
    out.push_back(cd(mag * std::cos(ang), mag * std::sin(ang)));
  }
  return out;
}

// Worst slack of ||T + z S||^2 - ||T||^2 - |z|^2 m(S)^2 over the supplied
// samples.  Nonnegative within relTol ||T||^2 whenever T perp_B S.
inline double pythagorean_check(const Matrix& t, const Matrix& s,
                                const std::vector<cd>& lambdaSamples,
                                const ToleranceConfig& cfg = {}) {
  const Verdict v = bj_ortho(t, s, cfg);
  if (v.status != Status::True) {
    throw NotOrthogonalError("pythagorean_check: pair is not Birkhoff-James orthogonal");
  }
  const double nt = op_norm(t);
  const double m = min_modulus(s);
  double worst = 0.0;  // z = 0 gives slack exactly 0
  for (const cd& z : lambdaSamples) {
    const double lhs = op_norm(t + s * z);
    worst = std::min(worst, lhs * lhs - nt * nt - std::norm(z) * m * m);
  }
  return worst;
}

// Result of minimizing ||T + z S|| over complex z.
struct GammaResult {
  cd gamma{0.0, 0.0};
  double minValue = 0.0;
  double pythagoreanSlack = 0.0;  // worst sampled slack at the minimizer
  bool unique = false;            // m(S) large enough to force a unique minimizer
};

inline GammaResult gamma_min(const Matrix& t, const Matrix& s, const ToleranceConfig& cfg = {}) {
  require_same_shape(t, s, "gamma_min");
  require_finite(t, "gamma_min");
  require_finite(s, "gamma_min");
  cfg.validate();
  const double ns = op_norm(s);
  if (ns == 0.0) throw ZeroDirectionError("gamma_min: direction operator is zero");
  const double nt = op_norm(t);

  auto f = [&](cd z) { return op_norm(t + s * z); };
  const cd trss = (s.adjoint() * s).trace();
  const cd lsq = -(s.adjoint() * t).trace() / trss;
  const double radius0 = 2.0 * nt / ns + std::abs(lsq) + 1.0;
  const ComplexMinResult res = minimize_complex(f, {cd(0.0, 0.0), lsq}, radius0, cfg.optTol);

  GammaResult out;
  out.gamma = res.arg;
  out.minValue = res.value;
  const double m = min_modulus(s);
  out.unique = m > kUncertainBand * cfg.witnessTol * ns;

  const Matrix tmin = t + s * out.gamma;
  const double radius = 2.0 * out.minValue / std::max(m, 0.1 * ns) + 1.0;
  double worst = 0.0;
  for (const cd& z : sample_lambdas(100, radius, 0xBA5E11ULL)) {
    const double lhs = op_norm(tmin + s * z);
    worst = std::min(worst, lhs * lhs - out.minValue * out.minValue - std::norm(z) * m * m);
  }
  out.pythagoreanSlack = worst;
  return out;
}

// Distance from x to the right submodule y * M_n.  Over the full matrix
// algebra that submodule is exactly { M : range(M) in range(y) }, so the
// distance in operator norm is the projection residual ||(I - P) x|| with P
// the orthogonal projector onto range(y).
inline double dist_to_submodule(const Matrix& x, const Matrix& y,
                                const ToleranceConfig& cfg = {}) {
  require_same_shape(x, y, "dist_to_submodule");
  require_finite(x, "dist_to_submodule");
  require_finite(y, "dist_to_submodule");
  cfg.validate();
  if (op_norm(y) == 0.0) return op_norm(x);
  const Matrix p = range_projector(y, cfg.relTol);
  return op_norm(x - p * x);
}

// Sampling report for: S noninvertible  <=>  every unitary T is
// Birkhoff-James orthogonal to S.  Probes T = I and the polar unitary of S
// (a deterministic counterexample when S is invertible) plus Haar samples.
struct UnitaryBjReport {
  double minModulus = 0.0;
  double opNorm = 0.0;
  std::size_t trueCount = 0;
  std::size_t falseCount = 0;
  std::size_t uncertainCount = 0;
  bool expectAllTrue = false;
  bool expectSomeFalse = false;
  bool consistent = true;
};

inline Matrix haar_unitary(std::size_t n, Rng& rng) {
  const Matrix g = rng.gaussian_matrix(n, n);
  Matrix q = orthonormalize(g);
  while (q.cols() < n) {  // Gaussian matrices are full rank almost surely
    q = orthonormalize(rng.gaussian_matrix(n, n));
  }
  for (std::size_t j = 0; j < n; ++j) {  // phase fix for Haar measure
    const cd r = vdot(q.col(j), g.col(j));
    const double a = std::abs(r);
    if (a > 0.0) {
      const cd ph = r / a;
      for (std::size_t i = 0; i < n; ++i) q(i, j) *= ph;
    }
  }
  return q;
}

inline UnitaryBjReport unitary_bj_iff_noninvertible(const Matrix& s, std::size_t trials,
                                                    std::uint64_t seed,
                                                    const ToleranceConfig& cfg = {}) {
  if (!s.is_square()) throw DimensionError("unitary_bj_iff_noninvertible: S must be square");
  require_finite(s, "unitary_bj_iff_noninvertible");
  cfg.validate();
  const std::size_t n = s.rows();
  UnitaryBjReport rep;
  rep.minModulus = min_modulus(s);
  rep.opNorm = op_norm(s);

  std::vector<Matrix> probes;
  probes.push_back(Matrix::identity(n));
  if (rep.opNorm > 0.0) {
    const SvdResult sv = svd(s);
    probes.push_back(sv.u * sv.v.adjoint());  // polar unitary factor
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) probes.push_back(haar_unitary(n, rng));

  for (const Matrix& u : probes) {
    switch (bj_ortho(u, s, cfg).status) {
      case Status::True: ++rep.trueCount; break;
      case Status::False: ++rep.falseCount; break;
      default: ++rep.uncertainCount;
    }
  }

  const double gate = cfg.witnessTol * rep.opNorm;
  if (rep.opNorm == 0.0 || rep.minModulus <= gate) {
    rep.expectAllTrue = true;
    rep.consistent = (rep.falseCount == 0);
  } else if (rep.minModulus > kUncertainBand * gate) {
    rep.expectSomeFalse = true;
    rep.consistent = (rep.falseCount >= 1);
  }
  return rep;
}

}  // namespace bjorth
