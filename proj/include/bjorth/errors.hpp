#pragma once

#include <stdexcept>
#include <string>

namespace bjorth {

// Shape or size disagreement between operands (also used for malformed headers).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Input failed a structural precondition (non-Hermitian where Hermitian is required).
class NotHermitianError : public std::invalid_argument {
 public:
  explicit NotHermitianError(const std::string& what) : std::invalid_argument(what) {}
};

// Operator is zero (or numerically indistinguishable from zero) where a direction is needed.
class DegenerateOperatorError : public std::runtime_error {
 public:
  explicit DegenerateOperatorError(const std::string& what) : std::runtime_error(what) {}
};

// A certified witness was requested but the search could not produce one.
class NoWitnessFoundError : public std::runtime_error {
 public:
  explicit NoWitnessFoundError(const std::string& what) : std::runtime_error(what) {}
};

// A construction requires an orthogonal pair and the decided verdict was not True.
class NotOrthogonalError : public std::runtime_error {
 public:
  explicit NotOrthogonalError(const std::string& what) : std::runtime_error(what) {}
};

// A check requiring an epsilon-orthogonal pair received one whose verdict was not True.
class NotApproxOrthogonalError : public std::runtime_error {
 public:
  explicit NotApproxOrthogonalError(const std::string& what) : std::runtime_error(what) {}
};

// A matrix failed the density-matrix checks (Hermitian, PSD, unit trace).
class InvalidStateError : public std::invalid_argument {
 public:
  explicit InvalidStateError(const std::string& what) : std::invalid_argument(what) {}
};

// The direction operator of a minimization is zero, so the minimizer is meaningless.
class ZeroDirectionError : public std::invalid_argument {
 public:
  explicit ZeroDirectionError(const std::string& what) : std::invalid_argument(what) {}
};

// A representation construction requires a noninvertible operator.
class InvertibleError : public std::invalid_argument {
 public:
  explicit InvertibleError(const std::string& what) : std::invalid_argument(what) {}
};

// Epsilon out of the admissible half-open interval [0, 1).
class EpsilonRangeError : public std::invalid_argument {
 public:
  explicit EpsilonRangeError(const std::string& what) : std::invalid_argument(what) {}
};

// Matrix file could not be parsed (bad token, bad header, non-finite value).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bjorth
