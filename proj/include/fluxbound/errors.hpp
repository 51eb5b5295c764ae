#pragma once

#include <stdexcept>
#include <string>

namespace fluxbound {

/// Input outside the mathematical domain of an operation. The CLI maps every
/// DomainError (and subclasses) to exit code 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
  virtual const char* reason() const noexcept { return "domain"; }
};

/// Gamma-function argument at a nonpositive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
  const char* reason() const noexcept override { return "pole"; }
};

/// Operation requested for a channel whose regime does not support it.
class RegimeError : public DomainError {
 public:
  RegimeError(const std::string& what, std::string regime)
      : DomainError(what), regime_(std::move(regime)) {}
  const char* reason() const noexcept override { return "regime"; }
  const std::string& regime() const noexcept { return regime_; }

 private:
  std::string regime_;
};

class NotNormalizableError : public DomainError {
 public:
  using DomainError::DomainError;
  const char* reason() const noexcept override { return "not-normalizable"; }
};

/// Bracket endpoints do not straddle a sign change.
class NoSignChangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MaxIterationsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonconvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive step control collapsed while integrating the radial system.
class StiffnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fluxbound
