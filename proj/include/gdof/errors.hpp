#pragma once

#include <stdexcept>
#include <string>

namespace gdof {

// Input outside the admissible parameter domain (CLI exit code 2).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Exponent sitting exactly on a regime boundary (alpha == 1).
class BoundaryError : public DomainError {
public:
    using DomainError::DomainError;
};

// Factorization or optimization failure (CLI exit code 4).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gdof
