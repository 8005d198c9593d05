#pragma once

#include <stdexcept>

namespace laststop {

// Invalid problem specification, parameters, or flags.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A resource guard tripped (e.g. exhaustive enumeration horizon too large).
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A sequence assumed unimodal failed its neighbor verification.
class UnimodalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace laststop
