#pragma once

#include <stdexcept>
#include <string>

namespace qflat {

/// Base class for all qflat runtime failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The Wei-Norman coefficient matrix is not invertible: |cos 2g2| at or
/// below the singularity threshold.
struct SingularCoordinates : Error {
  using Error::Error;
};

/// A parameter profile violates the structure the synthesis formulas need
/// (e.g. vanishing dg2 where the principal recovery divides by it).
struct DegenerateProfile : Error {
  using Error::Error;
};

/// The nonnegative root chosen for u2 disagrees with the f2 coefficient
/// line; indicates a g1 branch inconsistent with the design.
struct BranchInconsistency : Error {
  using Error::Error;
};

/// Endpoint blocks of the transition matrix do not vanish as required.
struct EndpointViolation : Error {
  using Error::Error;
};

/// Malformed or invalid scenario configuration (distinct exit status).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace qflat
