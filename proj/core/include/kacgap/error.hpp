#pragma once

#include <stdexcept>
#include <string>

namespace kacgap {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid configuration (cell budgets, rejection caps, bad frame lists).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The decreasing-tail safety check of a supremum scan failed; widen the cutoff.
class TailNotDecreasing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounding pipeline produced a value at or above its admissible threshold.
class BoundViolated : public std::runtime_error {
 public:
  BoundViolated(const std::string& what, int n, int ell)
      : std::runtime_error(what), n_(n), ell_(ell) {}

  int n() const noexcept { return n_; }
  int ell() const noexcept { return ell_; }

 private:
  int n_;
  int ell_;
};

/// A jump rate came out negative beyond tolerance (state left the constraint sphere).
class NegativeRate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few usable points for a fit.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kacgap
