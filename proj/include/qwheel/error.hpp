#pragma once

#include <stdexcept>
#include <string>

namespace qwheel {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arithmetic or argument with the wrong physical dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Mixing Gaussian and SI quantities where the units would not compose.
class ConventionError : public Error {
public:
    using Error::Error;
};

/// A value outside the domain of an operation (negative size, improper rotation, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or document.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace qwheel
