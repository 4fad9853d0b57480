#pragma once

#include <stdexcept>
#include <string>

namespace arealstat {

// Base class for all library errors. exit_code() is the process exit code
// the CLI maps the error to: 2 for invalid input / violated preconditions,
// 3 for internal invariant violations.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual int exit_code() const { return 2; }
};

class InvalidGeometryError : public Error {
 public:
  using Error::Error;
};

class InsufficientPointsError : public Error {
 public:
  using Error::Error;
};

class InsufficientSampleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain of an operation
// (center outside region, N > n_a, unknown unit id, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Edge-correction weight came out zero; its reciprocal is undefined.
class DegenerateWeightError : public Error {
 public:
  using Error::Error;
};

// Observed-bounding-rectangle window has zero area.
class DegenerateWindowError : public Error {
 public:
  using Error::Error;
};

class InvalidRadiusGridError : public Error {
 public:
  using Error::Error;
};

// Rejection sampler acceptance rate fell below the guard threshold.
class SamplingInefficiencyError : public Error {
 public:
  using Error::Error;
};

// Structure/config document could not be ingested.
class LoadError : public Error {
 public:
  using Error::Error;
};

class RenderError : public Error {
 public:
  using Error::Error;
};

// Mismatched components were combined (e.g. an envelope built for a
// different n or radius grid). Indicates a caller bug, not bad data.
class ContractViolationError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

}  // namespace arealstat
