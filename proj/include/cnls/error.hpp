#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cnls {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration or out-of-range construction parameter.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (e.g. omega <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a size/shape precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, std::size_t row)
      : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// A gradient-flow step could not be taken (singular implicit system).
class StepFailure : public Error {
 public:
  using Error::Error;
};

/// Non-finite values appeared in the fields during time stepping.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double last_good_time)
      : Error(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, std::size_t iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cnls
