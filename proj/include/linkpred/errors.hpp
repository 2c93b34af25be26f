#pragma once

#include <stdexcept>
#include <string>

namespace linkpred {

/// Bad input data: malformed lines, out-of-range ids, missing files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent or out-of-range configuration (flags, split specs, k).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation that cannot proceed on the given graph (disconnected
/// graph, size guard, divergent series).
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver ran out of iterations.
class ConvergenceError : public ComputeError {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : ComputeError(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace linkpred
