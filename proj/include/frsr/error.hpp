#pragma once

#include <stdexcept>
#include <string>

namespace frsr {

/// Construction-time parameter violation (bad shares, rates, atoms...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside a function's domain (e.g. utility evaluated off-domain).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A transform produced a non-finite value during integration.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : std::runtime_error(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// An identity that must hold by construction failed at runtime.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace frsr
