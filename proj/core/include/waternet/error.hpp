#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace waternet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, or 0 when not line oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid configuration, e.g. a cutoff that breaks the minimum-image rule.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its admissible range (alpha, beta, gamma, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Histograms whose densities have no crossing between their modes.
class CrossingError : public Error {
 public:
  using Error::Error;
};

/// Broken internal identity (never caused by valid input).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace waternet
