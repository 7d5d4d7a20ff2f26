#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "bjorth/config.hpp"
#include "bjorth/eig.hpp"
#include "bjorth/errors.hpp"
#include "bjorth/linalg.hpp"
#include "bjorth/matrix.hpp"
#include "bjorth/minimize.hpp"
#include "bjorth/rng.hpp"

namespace bjorth {

// Membership of 0 in the numerical range W(C) = { xi* C xi : ||xi|| = 1 }.
// margin is the signed distance estimate from 0 to the boundary of W(C):
// positive outside, negative inside.
struct RangeMembership {
  enum class Region { Inside, Outside, Borderline };
  Region status = Region::Borderline;
  double margin = 0.0;
  std::optional<Matrix> witness;  // unit vector, only for Inside
};

// Compression Q* C Q onto the column span of an orthonormal Q.
inline Matrix compress(const Matrix& c, const Matrix& q) {
  if (!c.is_square() || c.rows() != q.rows()) {
    throw DimensionError("compress: C must be square with rows(C) == rows(Q)");
  }
  return q.adjoint() * (c * q);
}

// Support function probe: lambda_min of the Hermitian part of e^{i theta} C.
// W(C) lies in the half-plane { Re(e^{i theta} w) >= support_min }.
inline double support_min(const Matrix& c, double theta, const ToleranceConfig& cfg = {}) {
  if (!c.is_square()) throw DimensionError("support_min: matrix not square");
  const cd rot(std::cos(theta), std::sin(theta));
  ToleranceConfig loose = cfg;
  loose.relTol = 0.5;  // the Hermitian part is Hermitian by construction
  return herm_eig(herm_part(c * rot), loose).values.front();
}

namespace detail {

struct SweepResult {
  double best_theta = 0.0;
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> thetas;
  std::vector<double> values;
  std::vector<Matrix> min_vectors;  // unit minimizing eigenvector per angle
};

// Samples the support function at `count` uniform angles, keeps the
// minimizing eigenvectors, and refines the best angle by golden section.
inline SweepResult support_sweep(const Matrix& c, const ToleranceConfig& cfg,
                                 std::size_t count = 64) {
  SweepResult out;
  const double two_pi = 6.283185307179586476925286766559;
  ToleranceConfig loose = cfg;
  loose.relTol = 0.5;
  for (std::size_t k = 0; k < count; ++k) {
    const double theta = two_pi * static_cast<double>(k) / static_cast<double>(count);
    const cd rot(std::cos(theta), std::sin(theta));
    EigResult e = herm_eig(herm_part(c * rot), loose);
    out.thetas.push_back(theta);
    out.values.push_back(e.values.front());
    out.min_vectors.push_back(e.vectors.col(0));
    if (e.values.front() > out.best_value) {
      out.best_value = e.values.front();
      out.best_theta = theta;
    }
  }
  const double step = two_pi / static_cast<double>(count);
  const double refined = golden_section(
      [&](double th) { return -support_min(c, th, cfg); }, out.best_theta - step,
      out.best_theta + step, cfg.optTol);
  const double refined_value = support_min(c, refined, cfg);
  if (refined_value > out.best_value) {
    out.best_value = refined_value;
    out.best_theta = refined;
  }
  return out;
}

// Candidate vectors xi with xi* H xi = 0 built from straddling eigenpairs of
// the Hermitian part, with the free relative phase solved against the skew
// part.  For 2 x 2 matrices this family is exhaustive, so failure there
// certifies that no zero witness exists.
inline void hk_pair_candidates(const Matrix& c, double slack, std::vector<Matrix>& out) {
  const Matrix h = herm_part(c);
  const Matrix k = skew_part(c);
  ToleranceConfig loose;
  loose.relTol = 0.5;
  EigResult eh = herm_eig(h, loose);
  const std::size_t n = c.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double li = eh.values[i];
      const double lj = eh.values[j];
      if (li > slack || lj < -slack) continue;  // needs li <= 0 <= lj
      const Matrix hi = eh.vectors.col(i);
      const Matrix hj = eh.vectors.col(j);
      if (i == j) {
        out.push_back(hi);
        continue;
      }
      const cd kij = vdot(hi, k * hj);
      const double kii = vdot(hi, k * hi).real();
      const double kjj = vdot(hj, k * hj).real();
      if (lj - li <= slack) {
        // Both eigenvalues vanish: the whole 2-plane kills the Hermitian part,
        // so solve xi* K xi = 0 on the 2 x 2 skew block exactly.
        Matrix kblock(2, 2);
        kblock(0, 0) = kii;
        kblock(0, 1) = kij;
        kblock(1, 0) = std::conj(kij);
        kblock(1, 1) = kjj;
        ToleranceConfig loose2;
        loose2.relTol = 0.5;
        EigResult ek = herm_eig(kblock, loose2);
        const double m1 = ek.values[0];
        const double m2 = ek.values[1];
        if (m1 > slack || m2 < -slack) continue;
        const double sk2 = (m2 - m1 <= slack) ? 0.0 : std::clamp(-m1 / (m2 - m1), 0.0, 1.0);
        const double sk = std::sqrt(sk2);
        const double ck = std::sqrt(1.0 - sk2);
        const Matrix mix2 = ek.vectors.col(0) * cd(ck, 0.0) + ek.vectors.col(1) * cd(sk, 0.0);
        Matrix xi = hi * mix2(0, 0) + hj * mix2(1, 0);
        const double nn = vnorm(xi);
        if (nn > 1e-12) out.push_back(xi * cd(1.0 / nn, 0.0));
        continue;
      }
      const double s2 = std::clamp(-li / (lj - li), 0.0, 1.0);
      const double s = std::sqrt(s2);
      const double co = std::sqrt(1.0 - s2);
      if (co * s < 1e-14) {
        out.push_back(s < 0.5 ? hi : hj);
        continue;
      }
      const double need = -(co * co * kii + s2 * kjj) / (2.0 * co * s);
      const double mag = std::abs(kij);
      if (mag + slack < std::abs(need)) continue;  // phase cannot reach the target
      double ratio = (mag > 0.0) ? std::clamp(need / mag, -1.0, 1.0) : 0.0;
      const double delta = (mag > 0.0) ? std::arg(kij) : 0.0;
      const double psi = -delta + std::acos(ratio);
      Matrix xi = hi * cd(co, 0.0) + hj * (cd(std::cos(psi), std::sin(psi)) * s);
      const double nn = vnorm(xi);
      if (nn > 1e-12) out.push_back(xi * cd(1.0 / nn, 0.0));
    }
  }
}

// Distance from the origin to the segment [p, q] in the complex plane.
inline double segment_distance(cd p, cd q) {
  const cd d = q - p;
  const double dd = std::norm(d);
  if (dd == 0.0) return std::abs(p);
  double t = -(p.real() * d.real() + p.imag() * d.imag()) / dd;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p + t * d);
}

// Projected gradient descent on |xi* C xi|^2 over the unit sphere.
inline std::optional<Matrix> pgd_zero_search(const Matrix& c, const Matrix& seed,
                                             double target_abs) {
  Matrix xi = seed;
  const double nn = vnorm(xi);
  if (nn < 1e-12) return std::nullopt;
  xi *= cd(1.0 / nn, 0.0);
  const Matrix cadj = c.adjoint();
  double step = 0.5;
  cd w = vdot(xi, c * xi);
  for (int it = 0; it < 300; ++it) {
    if (std::abs(w) <= target_abs) return xi;
    Matrix grad = (c * xi) * std::conj(w) + (cadj * xi) * w;
    grad -= xi * vdot(xi, grad);  // tangent component
    const double gn = vnorm(grad);
    if (gn < 1e-18) break;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      Matrix cand = xi - grad * cd(step / gn * std::abs(w), 0.0);
      cand *= cd(1.0 / vnorm(cand), 0.0);
      const cd wc = vdot(cand, c * cand);
      if (std::norm(wc) < std::norm(w)) {
        xi = cand;
        w = wc;
        step *= 1.5;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return (std::abs(w) <= target_abs) ? std::optional<Matrix>(xi) : std::nullopt;
}

}  // namespace detail

// Searches for a unit xi with |xi* C xi| <= accept_abs (default
// witnessTol * max(1, ||C||)).  Layered search: coordinate vectors, analytic
// eigenpair mixes of the Hermitian/skew decomposition (exhaustive for 2 x 2),
// two-dimensional compressions along near-crossing boundary segments, then
// projected gradient descent with seeded random restarts.
inline Matrix zero_witness(const Matrix& c, const ToleranceConfig& cfg = {},
                           double accept_abs = -1.0) {
  if (!c.is_square()) throw DimensionError("zero_witness: matrix not square");
  require_finite(c, "zero_witness");
  cfg.validate();
  const std::size_t n = c.rows();
  const double scale = op_norm(c);
  if (accept_abs < 0.0) accept_abs = cfg.witnessTol * std::max(1.0, scale);
  if (scale == 0.0) return Matrix::basis(n, 0);

  Matrix best(n, 1);
  double best_abs = std::numeric_limits<double>::infinity();
  auto consider = [&](const Matrix& xi) {
    const double nn = vnorm(xi);
    if (nn < 1e-12) return false;
    const Matrix u = xi * cd(1.0 / nn, 0.0);
    const double val = std::abs(vdot(u, c * u));
    if (val < best_abs) {
      best_abs = val;
      best = u;
    }
    return val <= accept_abs;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (consider(Matrix::basis(n, i))) return best;
  }

  const double slack = 1e-12 * std::max(1.0, scale);
  std::vector<Matrix> cands;
  const double angles[3] = {0.0, 0.78539816339744831, 1.5707963267948966};
  for (double th : angles) {
    cands.clear();
    detail::hk_pair_candidates(c * cd(std::cos(th), std::sin(th)), slack, cands);
    for (const Matrix& xi : cands) {
      if (consider(xi)) return best;
    }
  }

  if (n > 2) {
    detail::SweepResult sw = detail::support_sweep(c, cfg);
    std::vector<cd> pts(sw.min_vectors.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      pts[i] = vdot(sw.min_vectors[i], c * sw.min_vectors[i]);
    }
    std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> segs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        segs.push_back({detail::segment_distance(pts[i], pts[j]), {i, j}});
      }
    }
    std::sort(segs.begin(), segs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t tries = std::min<std::size_t>(segs.size(), 12);
    for (std::size_t t = 0; t < tries; ++t) {
      const auto [i, j] = segs[t].second;
      Matrix pairm(n, 2);
      pairm.set_col(0, sw.min_vectors[i]);
      pairm.set_col(1, sw.min_vectors[j]);
      Matrix basis;
      try {
        basis = orthonormalize(pairm, 1e-8);
      } catch (const DegenerateOperatorError&) {
        continue;
      }
      if (basis.cols() < 2) continue;
      const Matrix m2 = compress(c, basis);
      cands.clear();
      detail::hk_pair_candidates(m2, slack, cands);
      for (const Matrix& eta : cands) {
        if (consider(basis * eta)) return best;
      }
    }
  }

  Rng rng(derive_seed(0x5eedULL, n));
  for (int restart = 0; restart < 8; ++restart) {
    const Matrix seed = (restart == 0 && best_abs < std::numeric_limits<double>::infinity())
                            ? best
                            : rng.unit_vector(n);
    auto hit = detail::pgd_zero_search(c, seed, 0.5 * accept_abs);
    if (hit && consider(*hit)) return best;
  }

  if (best_abs <= accept_abs) return best;
  throw NoWitnessFoundError("zero_witness: no unit vector annihilates C within tolerance");
}

// Decides whether 0 lies in W(C).  Outside is certified by a support angle
// with positive minimum; Inside is certified by an explicit witness; anything
// within the tolerance band is reported Borderline rather than guessed.
// An external scale (e.g. ||T|| ||S|| for a compressed product) can replace
// ||C|| in the certificate thresholds.
inline RangeMembership contains_zero(const Matrix& c, const ToleranceConfig& cfg = {},
                                     double external_scale = -1.0) {
  if (!c.is_square()) throw DimensionError("contains_zero: matrix not square");
  require_finite(c, "contains_zero");
  cfg.validate();
  const double cnorm = op_norm(c);
  const double scale = (external_scale > 0.0) ? external_scale : cnorm;
  RangeMembership out;
  if (cnorm == 0.0) {
    out.status = RangeMembership::Region::Inside;
    out.margin = 0.0;
    out.witness = Matrix::basis(c.rows(), 0);
    return out;
  }
  const double wtol = cfg.witnessTol * ((scale > 0.0) ? scale : 1.0);

  const detail::SweepResult sw = detail::support_sweep(c, cfg);
  out.margin = sw.best_value;
  if (sw.best_value > kUncertainBand * wtol) {
    out.status = RangeMembership::Region::Outside;
    return out;
  }
  if (sw.best_value > wtol) {
    out.status = RangeMembership::Region::Borderline;
    return out;
  }
  try {
    out.witness = zero_witness(c, cfg, wtol);
    out.status = RangeMembership::Region::Inside;
  } catch (const NoWitnessFoundError&) {
    out.status = RangeMembership::Region::Borderline;
  }
  return out;
}

}  // namespace bjorth
