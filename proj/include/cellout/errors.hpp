#pragma once

#include <stdexcept>
#include <string>

namespace cellout {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A caller-side precondition on geometry or configuration does not hold.
class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// eta <= 2 in the fluid closed form (division by eta - 2).
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Inputs the model does not cover, e.g. heterogeneous transmit powers.
class UnsupportedConfigurationError : public Error {
public:
    using Error::Error;
};

/// A requested probability or threshold is outside the range a curve attains.
class RangeError : public Error {
public:
    using Error::Error;
};

/// An approximate model produced a value outside its theoretical bounds.
class ModelViolationError : public Error {
public:
    ModelViolationError(const std::string& what, double value)
        : Error(what), value_(value) {}
    double value() const noexcept { return value_; }

private:
    double value_;
};

/// Numerical procedure did not converge; carries the tolerance it reached.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved_tolerance)
        : Error(what), achieved_(achieved_tolerance) {}
    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Internal consistency check failed (e.g. outage not monotone in r).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace cellout
