#include "gtest/gtest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "bjorth/bj.hpp"
#include "bjorth/eig.hpp"
#include "bjorth/errors.hpp"
#include "bjorth/linalg.hpp"
#include "bjorth/matrix.hpp"
#include "bjorth/numrange.hpp"
#include "bjorth/oracle.hpp"

namespace {

using namespace bjorth;

TEST(InstanceStream, IdenticalSpecsGiveIdenticalSequences) {
  InstanceGenSpec spec;
  spec.dim = 3;
  spec.seed = 17;
  spec.ensemble = Ensemble::GaussianDense;
  InstanceStream a(spec), b(spec);
  for (int i = 0; i < 5; ++i) {
    const Instance ia = a.next(), ib = b.next();
    EXPECT_TRUE(ia.x == ib.x);
    EXPECT_TRUE(ia.y == ib.y);
  }
}

TEST(InstanceStream, DimensionBoundsEnforced) {
  InstanceGenSpec bad;
  bad.dim = 0;
  EXPECT_THROW(InstanceStream{bad}, DimensionError);
  bad.dim = 9;
  EXPECT_THROW(InstanceStream{bad}, DimensionError);
  bad.dim = 8;
  EXPECT_NO_THROW(InstanceStream{bad});
}

TEST(InstanceStream, EnsemblesHaveAdvertisedStructure) {
  InstanceGenSpec spec;
  spec.dim = 3;
  spec.seed = 29;

  spec.ensemble = Ensemble::DiagonalDominant;
  InstanceStream dd(spec);
  for (int i = 0; i < 4; ++i) {
    EXPECT_GE(min_modulus(dd.next().x), 0.1);
  }

  spec.ensemble = Ensemble::Projection;
  InstanceStream pr(spec);
  for (int i = 0; i < 4; ++i) {
    const Matrix p = pr.next().x;
    EXPECT_LE((p * p - p).frobenius(), 1e-10);
    EXPECT_LE(herm_defect(p), 1e-11);
  }

  spec.ensemble = Ensemble::Unitary;
  InstanceStream un(spec);
  for (int i = 0; i < 4; ++i) {
    const Matrix u = un.next().x;
    EXPECT_LE((u.adjoint() * u - Matrix::identity(3)).frobenius(), 1e-11);
  }
}

TEST(InstanceStream, PsdProductAlternatesDecisively) {
  InstanceGenSpec spec;
  spec.dim = 3;
  spec.seed = 31;
  spec.ensemble = Ensemble::PsdProduct;
  InstanceStream ps(spec);
  for (int i = 0; i < 6; ++i) {
    const Instance inst = ps.next();
    const Matrix prod = inst.x.adjoint() * inst.y;
    const double scale = std::max(1.0, prod.frobenius());
    EXPECT_LE(herm_defect(prod), 1e-8 * scale);
    EXPECT_GE(min_eigenvalue(herm_part(prod)), -1e-8 * scale);
    // Even instances carry a strictly positive product (orthogonality fails),
    // odd instances annihilate a norm-attaining direction (it holds).
    const Status expected = (i % 2 == 0) ? Status::False : Status::True;
    EXPECT_EQ(bj_ortho(inst.x, inst.y).status, expected) << "instance " << i;
    EXPECT_EQ(strong_bj_ortho(inst.x, inst.y).status, expected) << "instance " << i;
  }
}

TEST(InstanceStream, BjPairsHoldByConstruction) {
  for (const std::size_t dim : {2u, 3u}) {
    InstanceGenSpec spec;
    spec.dim = dim;
    spec.seed = 37;
    spec.ensemble = Ensemble::BjPair;
    InstanceStream stream(spec);
    for (int i = 0; i < 4; ++i) {
      const Instance inst = stream.next();
      EXPECT_EQ(bj_ortho(inst.x, inst.y).status, Status::True);
    }
  }
}

TEST(OracleBj, AgreesOnKnownPairs) {
  const Matrix t = Matrix::diag({cd(1.0, 0.0), cd(0.5, 0.0)});
  const Matrix s = Matrix::basis(2, 1) * Matrix::basis(2, 1).adjoint();
  const OracleBjResult hold = oracle_bj(t, s);
  EXPECT_TRUE(hold.orthogonal);
  EXPECT_NEAR(hold.minNorm, 1.0, 1e-9);

  const OracleBjResult fail = oracle_bj(Matrix::identity(2), Matrix::identity(2));
  EXPECT_FALSE(fail.orthogonal);
  EXPECT_LE(fail.minNorm, 1e-6);
  EXPECT_NEAR(fail.lambda.real(), -1.0, 1e-3);
  EXPECT_NEAR(fail.lambda.imag(), 0.0, 1e-3);
}

TEST(OracleBj, DegenerateArgumentsAndValidation) {
  const Matrix t = Matrix::diag({cd(2.0, 0.0), cd(1.0, 0.0)});
  const OracleBjResult zs = oracle_bj(t, Matrix(2, 2));
  EXPECT_TRUE(zs.orthogonal);
  EXPECT_NEAR(zs.minNorm, 2.0, 1e-12);
  const OracleBjResult zt = oracle_bj(Matrix(2, 2), t);
  EXPECT_TRUE(zt.orthogonal);
  EXPECT_DOUBLE_EQ(zt.minNorm, 0.0);
  EXPECT_THROW(oracle_bj(t, t, 0.0, 32), std::invalid_argument);
}

TEST(OracleStrong, FindsAlgebraicCancellation) {
  const OracleStrongResult fail =
      oracle_strong_bj(Matrix::identity(2), Matrix::diag({cd(-1.0, 0.0), cd(1.0, 0.0)}), 1000, 5);
  EXPECT_FALSE(fail.orthogonal);
  EXPECT_LE(fail.minNorm, 1e-9);

  const Matrix t = Matrix::diag({cd(1.0, 0.0), cd(0.5, 0.0)});
  const Matrix s = Matrix::basis(2, 1) * Matrix::basis(2, 1).adjoint();
  const OracleStrongResult hold = oracle_strong_bj(t, s, 1000, 6);
  EXPECT_TRUE(hold.orthogonal);
  EXPECT_NEAR(hold.minNorm, 1.0, 1e-9);
  EXPECT_THROW(oracle_strong_bj(t, s, 999, 1), std::invalid_argument);
}

TEST(OracleNumrange, KnownRanges) {
  const OracleRangeResult point = oracle_numrange(Matrix::identity(2), 10000, 7);
  EXPECT_FALSE(point.inside);
  EXPECT_NEAR(point.margin, 1.0, 1e-9);

  const OracleRangeResult seg =
      oracle_numrange(Matrix::diag({cd(-1.0, 0.0), cd(1.0, 0.0)}), 10000, 8);
  EXPECT_TRUE(seg.inside);
  EXPECT_NEAR(seg.margin, 0.0, 1e-9);

  // The range of the 2x2 nilpotent shift is the disk of radius one half; the
  // sampled hull sits just inside it.
  const OracleRangeResult disk =
      oracle_numrange(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), 20000, 9);
  EXPECT_TRUE(disk.inside);
  EXPECT_GE(disk.margin, -0.5);
  EXPECT_LE(disk.margin, -0.45);

  const OracleRangeResult off = oracle_numrange(Matrix::diag({cd(1.0, 0.0), cd(2.0, 0.0)}), 10000, 10);
  EXPECT_FALSE(off.inside);
  EXPECT_GE(off.margin, 1.0 - 1e-9);
  EXPECT_LE(off.margin, 1.05);
}

TEST(OracleNumrange, Validation) {
  EXPECT_THROW(oracle_numrange(Matrix(2, 3), 10000, 1), DimensionError);
  EXPECT_THROW(oracle_numrange(Matrix::identity(2), 9999, 1), std::invalid_argument);
}

TEST(OracleNumrange, SampledHullNeverContradictsAnOutsideVerdict) {
  // Sampled points lie in the true range, so a hull containing zero refutes
  // any Outside classification.
  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix c = rng.gaussian_matrix(3, 3);
    const RangeMembership rm = contains_zero(c);
    const OracleRangeResult orc = oracle_numrange(c, 10000, derive_seed(83, trial));
    if (orc.margin < -1e-6) {
      EXPECT_NE(rm.status, RangeMembership::Region::Outside);
    }
    if (rm.status == RangeMembership::Region::Outside) {
      EXPECT_GE(orc.margin, -1e-9);
    }
  }
}

TEST(OracleAgreement, DecidersMatchBruteForceOnSmallBatch) {
  InstanceGenSpec spec;
  spec.dim = 2;
  spec.seed = 97;
  InstanceStream stream(spec);
  for (int i = 0; i < 15; ++i) {
    const Instance inst = stream.next();
    const double nt = op_norm(inst.x), ns = op_norm(inst.y);
    if (nt == 0.0 || ns == 0.0) continue;

    const Verdict v = bj_ortho(inst.x, inst.y);
    const OracleBjResult ob = oracle_bj(inst.x, inst.y);
    if (v.status == Status::True) {
      EXPECT_TRUE(ob.orthogonal) << "instance " << i;
    }
    if (v.status == Status::False && v.margin > 1e-2 * nt * ns) {
      EXPECT_FALSE(ob.orthogonal) << "instance " << i;
    }

    const Verdict sv = strong_bj_ortho(inst.x, inst.y);
    const OracleStrongResult os = oracle_strong_bj(inst.x, inst.y, 1000, derive_seed(97, i));
    EXPECT_LE(os.minNorm, nt * (1.0 + 1e-9));
    if (sv.status == Status::True) {
      EXPECT_TRUE(os.orthogonal) << "instance " << i;
    }
  }
}

}  // namespace
