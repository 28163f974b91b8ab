#pragma once

#include <stdexcept>
#include <string>

namespace parazone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input violates a documented precondition (malformed sequence,
/// overlapping blocks, degenerate geometry, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A computation would exceed its configured size or step budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace parazone
