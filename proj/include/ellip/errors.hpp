#pragma once

#include <stdexcept>
#include <string>

namespace ellip {

/// Bad input: dimension mismatch, non-positive tolerance, kappa <= 1, ...
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to bracket or converge within its budget.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The 2x2 plane system is singular; callers fall back to the segment step.
class DegeneratePlane : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The inner plane solver hit its iteration cap far from the tolerance.
class InnerStall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ellip
