#pragma once

#include <stdexcept>
#include <string>

namespace delsarte {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Requested polynomial degree exceeds the configured cap.
class DegreeLimitError : public std::length_error {
 public:
  explicit DegreeLimitError(const std::string& what) : std::length_error(what) {}
};

/// Basis conditioning or another floating point breakdown in a solver.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A linear program could not produce a usable bound (infeasible,
/// unrepairable certificate, degenerate optimum).
class BoundError : public std::runtime_error {
 public:
  explicit BoundError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace delsarte
