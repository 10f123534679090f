#pragma once

#include <stdexcept>
#include <string>

namespace zzt {

/// Input failed a format or invariant check (bad stack, corrupt file, invalid diagram).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed arguments outside an operation's domain.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured resource limit (simplex cap, oracle cap) was exceeded.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace zzt
