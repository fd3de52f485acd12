#pragma once

#include <stdexcept>
#include <string>

namespace secrecy {

// Input that violates a documented precondition. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine could not deliver its contract (non-convergence,
// non-finite intermediate). Maps to CLI exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace secrecy
