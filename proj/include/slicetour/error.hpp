#pragma once

#include <stdexcept>
#include <string>

namespace slicetour {

// Base of every error raised by the library. Callers that only need a
// diagnostic can catch this and print what().
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Rank-deficient input to orthonormalization, zero-length vectors, etc.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation (h > R, t > 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Slicing needs at least one orthogonal direction beyond the display plane.
class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace slicetour
