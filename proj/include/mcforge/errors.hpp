#pragma once

#include <stdexcept>
#include <string>

namespace mcforge {

// Base class for every error raised by the library. Callers that only care
// about "the computation could not be completed" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Raised by invert() when a pivot falls below the relative threshold.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double last_valid_time)
      : Error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

// A flow or finite-difference stencil left the open coordinate box.
class OutOfDomainError : public Error {
 public:
  OutOfDomainError(const std::string& what, double exit_time)
      : Error(what), exit_time_(exit_time) {}
  double exit_time() const noexcept { return exit_time_; }

 private:
  double exit_time_;
};

// The geodesic through a fiber point does not reach time 1 inside the domain.
class NotInA0Error : public Error {
 public:
  using Error::Error;
};

class BaseMismatchError : public Error {
 public:
  using Error::Error;
};

class NotAnchoredError : public Error {
 public:
  NotAnchoredError(const std::string& what, double defect) : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcforge
