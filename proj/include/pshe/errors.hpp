#pragma once

#include <stdexcept>
#include <string>

namespace pshe {

/// Input outside the admitted parameter domain. `field()` names the offending
/// parameter so front ends can report it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A closed form or linear system hit a vanishing denominator / pivot.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Angle or wavelength outside the domain of a formula (e.g. cot at 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Angular-spectrum grid too coarse to resolve the beam.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pshe
