#pragma once

#include <stdexcept>
#include <string>

namespace autocorr {

/// Base of every error thrown by the library. `code()` is the stable
/// identifier the CLI reports in its JSON error payload.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// A state parameter outside its admissible set (beta, alpha, ...).
class ParameterDomainError : public Error {
 public:
  explicit ParameterDomainError(const std::string& what) : Error("parameter_domain", what) {}
};

// Evaluation point outside the function's domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(const std::string& what) : Error("insufficient_data", what) {}
};

// Series with mu <= 1, or a generator whose tail cannot be dominated.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error("convergence", what) {}
};

class ToleranceError : public Error {
 public:
  explicit ToleranceError(const std::string& what) : Error("tolerance", what) {}
};

class PoleError : public Error {
 public:
  PoleError(double location, const std::string& what)
      : Error("pole", what), location_(location) {}

  double location() const noexcept { return location_; }

 private:
  double location_;
};

// A pole of the Mellin integrand sits on the shifted integration line.
class PoleOnLineError : public Error {
 public:
  PoleOnLineError(double location, const std::string& what)
      : Error("pole_on_line", what), location_(location) {}

  double location() const noexcept { return location_; }

 private:
  double location_;
};

class ScaleError : public Error {
 public:
  explicit ScaleError(const std::string& what) : Error("scale", what) {}
};

class ChannelError : public Error {
 public:
  explicit ChannelError(const std::string& what) : Error("channel", what) {}
};

// Malformed state description (JSON document or piece layout).
class StateFormatError : public Error {
 public:
  explicit StateFormatError(const std::string& what) : Error("state_format", what) {}
};

}  // namespace autocorr
