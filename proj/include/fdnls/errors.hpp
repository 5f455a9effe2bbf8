#pragma once

#include <stdexcept>
#include <string>

namespace fdnls {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on representation or grid compatibility was violated.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the range where the operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested frequency cannot be resolved on the given grid.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A lattice mode is outside the unaliased range |n| < M.
class AliasingError : public Error {
 public:
  using Error::Error;
};

/// The fine reference solution failed its self-convergence check.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration file or command line.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The nonlinear integrator produced non-finite or runaway values.
class BlowUpError : public Error {
 public:
  BlowUpError(double time, double sup_norm, const std::string& context = {})
      : Error((context.empty() ? std::string() : context + ": ") +
              "blow-up detected at t = " + std::to_string(time) +
              " (sup norm " + std::to_string(sup_norm) + ")"),
        time_(time),
        sup_norm_(sup_norm) {}

  double time() const noexcept { return time_; }
  double sup_norm() const noexcept { return sup_norm_; }

 private:
  double time_;
  double sup_norm_;
};

}  // namespace fdnls
