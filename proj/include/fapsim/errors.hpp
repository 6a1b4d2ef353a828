#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fapsim {

/// Bad input: out-of-range parameters, malformed files, inconsistent scenarios.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request the physics or the network cannot satisfy
/// (turn radius below the fixed-wing minimum, a GU no FAP position can serve, ...).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what,
                           std::optional<double> radius = std::nullopt,
                           std::optional<std::size_t> gu_index = std::nullopt)
      : std::runtime_error(what), radius_(radius), gu_index_(gu_index) {}

  /// Offending turn radius [m], when the failure is a radius constraint.
  std::optional<double> radius() const { return radius_; }
  /// Offending ground user, when the failure is a singleton that cannot be served.
  std::optional<std::size_t> gu_index() const { return gu_index_; }

 private:
  std::optional<double> radius_;
  std::optional<std::size_t> gu_index_;
};

/// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fapsim
