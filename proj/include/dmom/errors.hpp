#pragma once

#include <stdexcept>
#include <string>

namespace dmom {

// Bad input: wrong modulus, non-prime where a prime is required, etc.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation requested at (or too close to) a pole.
struct PoleError : DomainError {
    using DomainError::DomainError;
};

// A numerical self-check failed (non-convergence, unexpected imaginary part).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dmom
