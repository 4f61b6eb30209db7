#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arlab {

// Precondition and input-shape violations (dimension mismatch, n = 0, size caps).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A recursion produced a non-finite value. `step` is the 1-based index at
// which it first appeared (time step, recursion step or trial index).
class OverflowError : public std::runtime_error {
public:
    OverflowError(const std::string& what, std::size_t step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

// Factorization failures that cannot happen in exact arithmetic.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace arlab
