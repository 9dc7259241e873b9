#pragma once

#include <stdexcept>
#include <string>

namespace regspec {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Rejection sampling used up its attempt budget.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

/// An exhaustive enumeration would exceed its size guard.
class SizeGuardExceeded : public Error {
public:
    using Error::Error;
};

/// An iterative kernel hit its iteration cap.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Malformed text input (matrix files, configs).
class ParseError : public Error {
public:
    using Error::Error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}

}  // namespace regspec
