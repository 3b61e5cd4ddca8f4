#pragma once

#include <stdexcept>
#include <string>

namespace mbe {

/// Malformed or inconsistent input: a simplex outside its parent, a
/// non-total function, a map that escapes a subcomplex.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An input that is well formed but fails a hypothesis check
/// (order preservation, compatibility, Forman-Morse-Bott conditions).
class ValidationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Something that must hold for every valid input did not. Always a bug.
class InvariantBreach : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace mbe
