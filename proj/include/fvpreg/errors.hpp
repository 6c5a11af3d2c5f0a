#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fvpreg {

/// Base of every exception thrown by the library. The C API maps each
/// subclass onto one fvpreg_status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Mode or grid index outside the represented range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Fields built over different eigen-models were combined.
class ModelMismatchError : public Error {
 public:
  using Error::Error;
};

/// Operation needs eigenfunctions that are only available on (0,1).
class UnsupportedDomainError : public Error {
 public:
  using Error::Error;
};

/// Parameters fall outside the regime an operation covers (complex roots,
/// mixed Gevrey indices, ...).
class UnsupportedRegimeError : public Error {
 public:
  using Error::Error;
};

/// A quantity left the double-precision range. `mode` is the offending
/// eigen-index (1-based) or 0 when no single mode is to blame.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, std::size_t mode = 0)
      : Error(what), mode_(mode) {}
  std::size_t mode() const noexcept { return mode_; }

 private:
  std::size_t mode_;
};

/// Picard iteration hit its cap. Carries the sup-norm increment history.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> history,
                      double residual)
      : Error(what), history_(std::move(history)), residual_(residual) {}
  const std::vector<double>& history() const noexcept { return history_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> history_;
  double residual_;
};

/// A grid-refinement ladder did not converge at the expected order.
class ReferenceRejectedError : public Error {
 public:
  using Error::Error;
};

/// Root bracketing failed.
class NoRootError : public Error {
 public:
  using Error::Error;
};

/// Noise level too large for the logarithmic parameter rule.
class NoiseTooLargeError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fvpreg
