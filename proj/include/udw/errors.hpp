#pragma once

#include <stdexcept>
#include <string>

namespace udw {

/// Exit-code categories used by the command line tool.
enum class ErrorKind { validation = 1, numerical = 2, io = 3 };

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(ErrorKind::validation, field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::validation, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::numerical, what) {}
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularDenominator : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Carries the best available estimate alongside the achieved error.
class ToleranceNotMet : public NumericalError {
 public:
  ToleranceNotMet(const std::string& what, double estimate_re,
                  double estimate_im, double achieved_error)
      : NumericalError(what),
        estimate_re_(estimate_re),
        estimate_im_(estimate_im),
        achieved_error_(achieved_error) {}
  double estimate_re() const noexcept { return estimate_re_; }
  double estimate_im() const noexcept { return estimate_im_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double estimate_re_, estimate_im_, achieved_error_;
};

class PerturbationBreakdown : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidSpectrum : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OptimizerDiverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoBracket : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace udw
