#pragma once

#include <stdexcept>
#include <string>

namespace strictq {

// Bad input or violated precondition. The CLI maps this to exit code 1.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Instance beyond a configured computation bound ("instance too large",
// "oracle out of range"). Also a usage-level failure.
class BoundExceeded : public UsageError {
public:
    using UsageError::UsageError;
};

// An internal invariant failed, e.g. a negative Kronecker value from the
// two-row formula or an inexact character-sum division. Exit code 2.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace strictq
