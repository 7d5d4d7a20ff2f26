#include "gtest/gtest.h"

#include <cmath>
#include <complex>

#include "bjorth/bj.hpp"
#include "bjorth/errors.hpp"
#include "bjorth/gns.hpp"
#include "bjorth/linalg.hpp"
#include "bjorth/matrix.hpp"
#include "bjorth/minimize.hpp"
#include "bjorth/rng.hpp"
#include "bjorth/svd.hpp"

namespace {

using namespace bjorth;

DensityMatrix random_density(Rng& rng, std::size_t n) {
  DensityMatrix d;
  d.p = project_density(herm_part(rng.gaussian_matrix(n, n)));
  return d;
}

TEST(DensityMatrix, ValidateRejectsIllFormedStates) {
  DensityMatrix ok;
  ok.p = Matrix::identity(2) * cd(0.5, 0.0);
  EXPECT_NO_THROW(ok.validate());

  DensityMatrix notHermitian;
  notHermitian.p = Matrix::from_rows({{0.5, 1.0}, {0.0, 0.5}});
  EXPECT_THROW(notHermitian.validate(), InvalidStateError);

  DensityMatrix wrongTrace;
  wrongTrace.p = Matrix::identity(2);
  EXPECT_THROW(wrongTrace.validate(), InvalidStateError);

  DensityMatrix negative;
  negative.p = Matrix::diag({cd(1.5, 0.0), cd(-0.5, 0.0)});
  EXPECT_THROW(negative.validate(), InvalidStateError);

  DensityMatrix rect;
  rect.p = Matrix(2, 3);
  EXPECT_THROW(rect.validate(), InvalidStateError);
}

TEST(GnsConstruct, MaximallyMixedState) {
  DensityMatrix state;
  state.p = Matrix::identity(2) * cd(0.5, 0.0);
  const GnsRep rep = gns_construct(state);
  EXPECT_EQ(rep.supportRank, 2u);
  EXPECT_EQ(rep.repDim, 4u);
  EXPECT_EQ(rep.algebra_dim(), 2u);
  EXPECT_NEAR(vnorm(rep.xi), 1.0, 1e-12);

  Rng rng(61);
  for (int i = 0; i < 5; ++i) {
    const Matrix c = rng.gaussian_matrix(2, 2);
    const cd expected = (state.p * c).trace();
    EXPECT_LE(std::abs(rep.state_value(c) - expected), 1e-12 * std::max(1.0, c.frobenius()));
  }
  EXPECT_LE((rep.represent(Matrix::identity(2)) - Matrix::identity(4)).frobenius(), 1e-13);
}

TEST(GnsConstruct, PureStateActsOnOriginalSpace) {
  Rng rng(62);
  const Matrix v = rng.unit_vector(3);
  DensityMatrix state;
  state.p = v * v.adjoint();
  const GnsRep rep = gns_construct(state);
  EXPECT_EQ(rep.supportRank, 1u);
  EXPECT_EQ(rep.repDim, 3u);
  const Matrix c = rng.gaussian_matrix(3, 3);
  EXPECT_LE(std::abs(rep.state_value(c) - vdot(v, c * v)), 1e-12 * c.frobenius());
}

TEST(GnsConstruct, ReproducesRandomStatesTightly) {
  Rng rng(63);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const DensityMatrix state = random_density(rng, n);
    const GnsRep rep = gns_construct(state);
    EXPECT_GE(rep.supportRank, 1u);
    EXPECT_LE(rep.supportRank, n);
    const double dev = verify_state_reproduction(rep, state, 20, derive_seed(63, trial));
    EXPECT_LE(dev, 1e-12);
  }
}

TEST(GnsConstruct, RepresentRejectsWrongDimensions) {
  DensityMatrix state;
  state.p = Matrix::identity(3) * cd(1.0 / 3.0, 0.0);
  const GnsRep rep = gns_construct(state);
  EXPECT_THROW(rep.represent(Matrix::identity(2)), DimensionError);
}

TEST(StrongRep, WitnessStateCarriesTheModuleInequality) {
  const Matrix t = Matrix::diag({cd(1.0, 0.0), cd(0.5, 0.0)});
  const Matrix s = Matrix::basis(2, 1) * Matrix::basis(2, 1).adjoint();
  const StrongRepReport rep = verify_strong_bj_rep(t, s, 60, 64);
  EXPECT_EQ(rep.supportRank, 1u);
  EXPECT_EQ(rep.samples, 60u);
  EXPECT_LE(rep.productResidual, 1e-9);
  EXPECT_GE(rep.worstSlack, -1e-9);
}

TEST(StrongRep, RandomConstructedPairs) {
  Rng rng(65);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 2 + trial % 3;
    // Same construction as the decider tests: kill the norm-attaining image
    // direction inside the second element.
    Matrix t = rng.gaussian_matrix(n, n);
    while (op_norm(t) == 0.0) t = rng.gaussian_matrix(n, n);
    const SvdResult sv = svd(t);
    const Matrix top = t * sv.v.col(0);
    const Matrix unit = top * cd(1.0 / vnorm(top), 0.0);
    const Matrix g = rng.gaussian_matrix(n, n);
    const Matrix s = g - unit * (unit.adjoint() * g);

    const Matrix tn = t * cd(1.0 / op_norm(t), 0.0);
    const double ns = op_norm(s);
    const Matrix sn = (ns > 0.0) ? s * cd(1.0 / ns, 0.0) : s;
    const StrongRepReport rep = verify_strong_bj_rep(tn, sn, 40, derive_seed(65, trial));
    EXPECT_GE(rep.worstSlack, -1e-9);
    EXPECT_LE(rep.productResidual, 1e-6);
  }
}

TEST(StrongRep, RejectsNonOrthogonalPairs) {
  EXPECT_THROW(verify_strong_bj_rep(Matrix::identity(2), Matrix::identity(2), 10, 1),
               NotOrthogonalError);
  EXPECT_THROW(verify_strong_bj_rep(Matrix(2, 3), Matrix(2, 3), 10, 1), DimensionError);
}

TEST(KernelRep, SingularDiagonalInducesAnnihilatingState) {
  const Matrix a = Matrix::diag({cd(0.0, 0.0), cd(1.0, 0.0), cd(2.0, 0.0)});
  const KernelRepReport rep = selfadjoint_noninvertible_rep(a, 60, 66);
  EXPECT_EQ(rep.supportRank, 1u);
  EXPECT_LE(rep.minModulus, 1e-12);
  EXPECT_LE(rep.stateValue, 1e-12);
  EXPECT_GE(rep.worstSlack, -1e-9);
}

TEST(KernelRep, ZeroOperatorIsDegenerateButValid) {
  const KernelRepReport rep = selfadjoint_noninvertible_rep(Matrix(2, 2), 20, 67);
  EXPECT_LE(rep.stateValue, 1e-15);
  EXPECT_GE(rep.worstSlack, -1e-12);
}

TEST(KernelRep, RandomSingularHermitians) {
  Rng rng(68);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const Matrix v = rng.unit_vector(n);
    const Matrix proj = Matrix::identity(n) - v * v.adjoint();
    Matrix h = herm_part(proj * herm_part(rng.gaussian_matrix(n, n)) * proj);
    const double nh = op_norm(h);
    if (nh == 0.0) continue;
    h *= cd(1.0 / nh, 0.0);
    const KernelRepReport rep = selfadjoint_noninvertible_rep(h, 40, derive_seed(68, trial));
    EXPECT_LE(rep.stateValue, 1e-9);
    EXPECT_GE(rep.worstSlack, -1e-9);
  }
}

TEST(KernelRep, RejectsInvertibleAndNonHermitian) {
  EXPECT_THROW(selfadjoint_noninvertible_rep(Matrix::identity(2), 10, 1), InvertibleError);
  EXPECT_THROW(selfadjoint_noninvertible_rep(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), 10, 1),
               NotHermitianError);
  EXPECT_THROW(selfadjoint_noninvertible_rep(Matrix(2, 3), 10, 1), DimensionError);
}

}  // namespace
