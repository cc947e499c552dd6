#pragma once

#include <stdexcept>
#include <string>

namespace qudit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionOverflow : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class EigenFailure : public Error {
 public:
  using Error::Error;
};

/// A representation failed to reproduce the shift/clock action it was built for.
class ConventionMismatch : public Error {
 public:
  using Error::Error;
};

class RelationViolated : public Error {
 public:
  using Error::Error;
};

class BasisDegenerate : public Error {
 public:
  using Error::Error;
};

class CalibrationFailed : public Error {
 public:
  CalibrationFailed(const std::string& what, double best_fidelity)
      : Error(what), best_fidelity_(best_fidelity) {}

  double best_fidelity() const noexcept { return best_fidelity_; }

 private:
  double best_fidelity_;
};

class UnknownMetric : public Error {
 public:
  using Error::Error;
};

}  // namespace qudit
