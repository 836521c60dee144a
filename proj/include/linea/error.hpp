#pragma once

#include <stdexcept>
#include <string>

namespace linea {

/// Base of every error thrown by the library. The CLI maps subclasses to exit
/// codes: input/argument problems exit 2, numerical failures exit 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable/unwritable file or unsupported image encoding.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed correspondence JSON; the message names the offending field or offset.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Violated precondition: mismatched dimensions, out-of-range parameter.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Inputs for which a metric is undefined (empty mask, zero-mass histogram).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Fewer than three correspondences handed to the spline fit.
class InsufficientPointsError : public Error {
public:
    using Error::Error;
};

/// Singular or ill-conditioned spline system (collinear or duplicate controls).
class DegenerateConfigurationError : public Error {
public:
    DegenerateConfigurationError(const std::string& what, double rcond)
        : Error(what), rcond_(rcond) {}

    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

/// The fallback matcher found fewer than three usable pairs.
class InsufficientMatchesError : public Error {
public:
    using Error::Error;
};

/// Every point of a correspondence file fell outside its image.
class EmptySetError : public Error {
public:
    using Error::Error;
};

} // namespace linea
