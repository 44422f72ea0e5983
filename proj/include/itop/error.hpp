#pragma once

#include <stdexcept>
#include <string>

namespace itop {

/// Rejected input: a precondition of an operation does not hold.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A truncation or budget bound would have to be exceeded to answer faithfully.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact integer arithmetic left the representable range.
class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// An operation refused to run because a hypothesis it relies on fails.
class Refusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace itop
