#pragma once

#include <stdexcept>
#include <string>

namespace fibrak {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An id in an input table does not resolve.
struct MalformedTable : Error {
    using Error::Error;
};

// find_pullback was asked for arrows with different codomains.
struct NotACospan : Error {
    using Error::Error;
};

// A universal-property search exceeded the configured candidate budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

// A projection functor admits no cartesian lift for some (arrow, object).
struct NotAFibration : Error {
    using Error::Error;
};

// A stated precondition of an operation does not hold.
struct PreconditionFailed : Error {
    using Error::Error;
};

// A corpus generator was asked for an instance beyond its size cap.
struct CapExceeded : Error {
    using Error::Error;
};

// Two independent routes to the same verdict disagree. Always a bug,
// never a property failure.
struct InternalDisagreement : Error {
    using Error::Error;
};

// A construction that is guaranteed by a theorem failed. Fatal diagnostic.
struct TheoremViolation : Error {
    using Error::Error;
};

// Text input could not be parsed.
struct ParseError : Error {
    ParseError(const std::string& msg, int line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
    int line;
};

}  // namespace fibrak
