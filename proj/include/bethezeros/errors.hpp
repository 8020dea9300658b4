#ifndef BETHEZEROS_ERRORS_HPP
#define BETHEZEROS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace bethezeros {

/// Invalid parameter domain, weight vector, or system configuration.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A denominator (s-factor, normalizer) vanished where the contract forbids it.
class SingularityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity failed an internal consistency check (e.g. imaginary
/// residue of a nominally real value above tolerance).
class NumericInstabilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The bisection oracle could not locate the expected number of sign changes.
class OracleFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration exhausted max_iters. Carries the last iterate so the
/// caller can inspect or restart.
class NonConvergenceError : public std::runtime_error {
public:
  NonConvergenceError(const std::string& msg, std::vector<double> last_iterate,
                      double grad_norm, int iterations)
      : std::runtime_error(msg),
        last_iterate(std::move(last_iterate)),
        grad_norm(grad_norm),
        iterations(iterations) {}

  std::vector<double> last_iterate;
  double grad_norm;
  int iterations;
};

} // namespace bethezeros

#endif
