#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bjorth/bj.hpp"
#include "bjorth/config.hpp"
#include "bjorth/errors.hpp"
#include "bjorth/linalg.hpp"
#include "bjorth/matrix.hpp"
#include "bjorth/rng.hpp"
#include "bjorth/svd.hpp"

namespace bjorth {

// Concrete cyclic representation of the state c -> tr(P c).  The algebra of
// n x n matrices acts on C^n (x) C^r as pi(c) = c (x) I_r, with r the support
// rank of P.  The vector xi packs the weighted eigenvectors of P (columns of
// sqrtP), so that <pi(c) xi, xi> reproduces tr(P c) exactly.
struct GnsRep {
  std::size_t supportRank = 0;  // r = number of retained eigenvalues of P
  std::size_t repDim = 0;       // n * r
  Matrix sqrtP;                 // n x r, column k = sqrt(p_k) * v_k
  Matrix xi;                    // unit vector in C^(n*r)

  std::size_t algebra_dim() const { return supportRank == 0 ? 0 : repDim / supportRank; }

  Matrix represent(const Matrix& c) const {
    if (c.rows() != algebra_dim() || c.cols() != algebra_dim()) {
      throw DimensionError("GnsRep::represent: operator size mismatch");
    }
    return kron(c, Matrix::identity(supportRank));
  }

  cd state_value(const Matrix& c) const {
    const Matrix img = represent(c) * xi;
    return vdot(xi, img);
  }
};

inline GnsRep gns_construct(const DensityMatrix& state, const ToleranceConfig& cfg = {}) {
  state.validate(cfg);
  const std::size_t n = state.p.rows();
  const EigResult e = herm_eig(herm_part(state.p));

  std::vector<std::size_t> kept;
  for (std::size_t a = 0; a < n; ++a) {
    if (e.values[a] > cfg.clusterTol) kept.push_back(a);
  }
  if (kept.empty()) throw InvalidStateError("gns_construct: state has no mass above cutoff");

  GnsRep rep;
  rep.supportRank = kept.size();
  rep.repDim = n * rep.supportRank;
  rep.sqrtP = Matrix(n, rep.supportRank);
  rep.xi = Matrix(rep.repDim, 1);
  double mass = 0.0;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const double w = std::sqrt(e.values[kept[k]]);
    mass += e.values[kept[k]];
    for (std::size_t a = 0; a < n; ++a) {
      rep.sqrtP(a, k) = w * e.vectors(a, kept[k]);
      rep.xi(a * rep.supportRank + k, 0) = rep.sqrtP(a, k);
    }
  }
  // renormalize the truncation so xi stays an exact unit vector
  const cd scale(1.0 / std::sqrt(mass), 0.0);
  rep.xi *= scale;
  rep.sqrtP *= scale;
  return rep;
}

// Largest deviation |<pi(c) xi, xi> - tr(P c)| / ||c|| over random operators.
inline double verify_state_reproduction(const GnsRep& rep, const DensityMatrix& state,
                                        std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  const std::size_t n = rep.algebra_dim();
  for (std::size_t i = 0; i < samples; ++i) {
    const Matrix c = rng.gaussian_matrix(n, n);
    const cd got = rep.state_value(c);
    const cd want = (state.p * c).trace();
    worst = std::max(worst, std::abs(got - want) / std::max(op_norm(c), 1e-300));
  }
  return worst;
}

// Sampling check of the representation inequality behind strong
// Birkhoff-James orthogonality:
//   ||a + b c||^2 >= ||a||^2 + ||pi(b c) xi||^2
// for every algebra element c, where (pi, xi) is the cyclic representation of
// the rank-one state built from the strong-orthogonality witness.
struct StrongRepReport {
  std::size_t supportRank = 0;
  std::size_t samples = 0;
  double worstSlack = 0.0;        // min over c of lhs^2 - ||a||^2 - ||pi(bc) xi||^2
  double productResidual = 0.0;   // ||pi(b* a) xi||, should be ~0 for the witness state
};

inline StrongRepReport verify_strong_bj_rep(const Matrix& a, const Matrix& b,
                                            std::size_t trials, std::uint64_t seed,
                                            const ToleranceConfig& cfg = {}) {
  if (!a.is_square() || !b.is_square()) {
    throw DimensionError("verify_strong_bj_rep: algebra elements must be square");
  }
  const Verdict v = strong_bj_ortho(a, b, cfg);
  if (v.status != Status::True) {
    throw NotOrthogonalError("verify_strong_bj_rep: pair is not strongly orthogonal");
  }
  const GnsRep rep = gns_construct(*v.witnessState, cfg);
  const double na = op_norm(a);

  StrongRepReport out;
  out.supportRank = rep.supportRank;
  out.samples = trials;
  out.productResidual = vnorm(rep.represent(b.adjoint() * a) * rep.xi);

  Rng rng(seed);
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < trials; ++i) {
    Matrix c = rng.gaussian_matrix(n, n);
    const double nc = op_norm(c);
    if (nc > 0.0) c *= cd(2.0 * rng.uniform() / nc, 0.0);  // ||c|| <= 2
    const double lhs = op_norm(a + b * c);
    const double rep_term = vnorm(rep.represent(b * c) * rep.xi);
    const double slack = lhs * lhs - na * na - rep_term * rep_term;
    out.worstSlack = std::min(out.worstSlack, slack);
  }
  return out;
}

// For self-adjoint noninvertible a: a kernel state annihilates a, and the
// induced representation satisfies ||I + a b||^2 >= 1 + ||pi(a b) xi||^2 for
// every b.  Throws InvertibleError when the smallest singular value of a is
// above the tolerance gate.
struct KernelRepReport {
  std::size_t supportRank = 0;
  std::size_t samples = 0;
  double minModulus = 0.0;
  double stateValue = 0.0;   // tr(P a^2), should vanish for a kernel state
  double worstSlack = 0.0;   // min over b of ||I + ab||^2 - 1 - ||pi(ab) xi||^2
};

inline KernelRepReport selfadjoint_noninvertible_rep(const Matrix& a, std::size_t trials,
                                                     std::uint64_t seed,
                                                     const ToleranceConfig& cfg = {}) {
  if (!a.is_square()) throw DimensionError("selfadjoint_noninvertible_rep: input must be square");
  require_finite(a, "selfadjoint_noninvertible_rep");
  cfg.validate();
  const double scale = std::max(1.0, a.frobenius());
  if (herm_defect(a) > cfg.relTol * scale) {
    throw NotHermitianError("selfadjoint_noninvertible_rep: input is not self-adjoint");
  }
  const double na = op_norm(a);
  const double m = min_modulus(a);
  if (na > 0.0 && m > cfg.witnessTol * na) {
    throw InvertibleError("selfadjoint_noninvertible_rep: operator is invertible");
  }
  const std::size_t n = a.rows();

  Matrix xi0 = Matrix::basis(n, 0);
  if (na > 0.0) {
    const SvdResult sv = svd(a);
    xi0 = sv.v.col(sv.v.cols() - 1);  // kernel direction
  }
  DensityMatrix state;
  state.p = xi0 * xi0.adjoint();
  const GnsRep rep = gns_construct(state, cfg);

  KernelRepReport out;
  out.supportRank = rep.supportRank;
  out.samples = trials;
  out.minModulus = m;
  out.stateValue = rep.state_value(a * a).real();

  Rng rng(seed);
  const Matrix eye = Matrix::identity(n);
  for (std::size_t i = 0; i < trials; ++i) {
    Matrix b = rng.gaussian_matrix(n, n);
    const double nb = op_norm(b);
    if (nb > 0.0) b *= cd(2.0 * rng.uniform() / nb, 0.0);
    const double lhs = op_norm(eye + a * b);
    const double rep_term = vnorm(rep.represent(a * b) * rep.xi);
    out.worstSlack = std::min(out.worstSlack, lhs * lhs - 1.0 - rep_term * rep_term);
  }
  return out;
}

}  // namespace bjorth
