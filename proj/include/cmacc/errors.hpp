#ifndef CMACC_ERRORS_HPP
#define CMACC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmacc {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Rejected input: bad model data, dimension problems, violated contracts.
// The CLI maps these to exit code 3.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Failure while evaluating an otherwise well-formed model.
// The CLI maps these to exit code 4.
class NumericError : public Error {
public:
  using Error::Error;
};

class InvalidTaps : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InvalidNoise : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InvalidPower : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class BlockTooShort : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class LengthMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Periodized noise covariance has a negative eigenvalue.
class IndefinitePeriodization : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InvalidAllocation : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InvalidWeights : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class BudgetViolated : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ConditionNotVerified : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// A sub-channel has zero noise but positive received signal power.
class InfiniteRate : public NumericError {
public:
  using NumericError::NumericError;
};

class SingularNoise : public NumericError {
public:
  using NumericError::NumericError;
};

class ZeroChannel : public NumericError {
public:
  using NumericError::NumericError;
};

}  // namespace cmacc

#endif  // CMACC_ERRORS_HPP
