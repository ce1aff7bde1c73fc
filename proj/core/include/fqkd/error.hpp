#pragma once

#include <stdexcept>
#include <string>

namespace fqkd {

// Caller broke a precondition (dimension mismatch, symbol out of range, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Physically meaningless input: negative power, non-positive kappa, pump
// pairs that do not conserve energy.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Phase matching cannot be reached with the requested power budget.
class InfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed or inconsistent session / fiber configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reading or writing an artifact on disk failed.
class PersistenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fqkd
