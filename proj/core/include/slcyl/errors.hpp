#pragma once

#include <stdexcept>
#include <string>

namespace slcyl {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad input: dimension mismatch, out-of-range parameter, malformed config.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

/// A point was queried outside the region where an operation is defined.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

class DegenerateFrameError : public Error {
 public:
  explicit DegenerateFrameError(const std::string& msg) : Error(msg) {}
};

/// Quadrature or root finding failed to reach its tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& msg, double achieved)
      : Error(msg + " (achieved " + std::to_string(achieved) + ")"), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class UnsupportedConeError : public Error {
 public:
  explicit UnsupportedConeError(const std::string& msg) : Error(msg) {}
};

class InsufficientSamplesError : public Error {
 public:
  explicit InsufficientSamplesError(const std::string& msg) : Error(msg) {}
};

}  // namespace slcyl
