#pragma once

#include <stdexcept>
#include <string>

namespace superint {

/// Point or stencil outside the admissible region of a field.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite value produced while evaluating a field.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A potential does not belong to the class an operation assumes
/// (e.g. not a solution of the cubic first-order ODE).
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace superint
