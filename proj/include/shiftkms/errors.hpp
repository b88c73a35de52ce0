#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shiftkms {

// Base of every library error. Callers that only distinguish "bad input" from
// "internal invariant failed" can catch InvalidInput and InvariantViolation.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input does not satisfy a documented precondition (zero row, symbol out of
// range, reducible matrix where irreducibility is required, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Exact integer arithmetic would wrap; the message names the big-integer route.
class OverflowError : public Error {
public:
    using Error::Error;
};

// An iterative method hit its iteration cap. Keeps the last iterate so the
// caller can inspect how far it got.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> last_iterate, double residual)
        : Error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    std::vector<double> last_iterate_;
    double residual_;
};

// A word or automaton horizon needs more digits of the expansion of 1 than were
// computed for a beta-shift.
class InsufficientDigits : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// A mathematical identity that must hold for correct code did not hold.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace shiftkms
