#pragma once

#include <stdexcept>

namespace bjorth {

// Tolerances shared by every decision procedure.
//
//   relTol     - relative tolerance for residual / slack checks
//   clusterTol - relative width of a singular-value cluster (norm-attaining subspace)
//   witnessTol - acceptance threshold for witness certificates
//   optTol     - stopping tolerance for scalar/matrix minimizers
//
// Deciders answer Uncertain instead of guessing whenever a quantity lands within
// 10x the relevant tolerance of a decision boundary.
struct ToleranceConfig {
  double relTol = 1e-9;
  double clusterTol = 1e-8;
  double witnessTol = 1e-7;
  double optTol = 1e-8;

  void validate() const {
    auto bad = [](double t) { return !(t > 0.0) || !(t < 1.0); };
    if (bad(relTol) || bad(clusterTol) || bad(witnessTol) || bad(optTol)) {
      throw std::invalid_argument("ToleranceConfig: tolerances must lie in (0, 1)");
    }
  }
};

// Width multiplier of the Uncertain band around each decision boundary.
inline constexpr double kUncertainBand = 10.0;

}  // namespace bjorth
