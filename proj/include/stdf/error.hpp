#pragma once

#include <stdexcept>
#include <string>

namespace stdf {

// Error families. The CLI maps each family to a distinct exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 5; }
};

/// Malformed configuration, unknown tags, missing mandatory fields.
class ConfigError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// Input data violates an assumption (ties, non-finite values, ragged CSV).
class DataError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

/// A stated precondition of a bound or experiment is violated.
class PreconditionError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

} // namespace stdf
