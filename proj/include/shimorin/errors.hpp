#pragma once

#include <stdexcept>
#include <string>

namespace shimorin {

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A quadrature did not meet its tolerance, or produced a non-finite sample.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A hypothesis required by an operation does not hold for the given input.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed measure spec or run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A verified inequality failed; the message carries the witness.
class BoundViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace shimorin
