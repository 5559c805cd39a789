#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seirs {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs that break a documented constraint (parameter ranges, step alignment,
/// operation preconditions). Carries the names of the violated constraints.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  ValidationError(const std::string& what, std::vector<std::string> violations)
      : Error(what), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A numerical invariant failed during a computation (conservation, positivity,
/// stochastic excursion). `node()` is the trajectory node where it happened.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, std::optional<std::size_t> node = std::nullopt)
      : Error(what), node_(node) {}

  std::optional<std::size_t> node() const noexcept { return node_; }

 private:
  std::optional<std::size_t> node_;
};

/// The characteristic quasi-polynomial has no imaginary-axis crossing.
class NoCrossingError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration document.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace seirs
