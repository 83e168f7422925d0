#pragma once

#include <stdexcept>
#include <string>

namespace neurocap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector or matrix shapes that do not chain.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Malformed, missing, inconsistent or corrupted input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// NaN/Inf encountered, or an optimization that cannot proceed.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Arguments outside an operation's documented domain.
class ArgumentError : public Error {
public:
    using Error::Error;
};

}  // namespace neurocap
