#pragma once

#include <stdexcept>
#include <string>

namespace cwire {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: loops, out-of-range endpoints, bad parameters.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An exact solver was asked to exceed its configured size cap or budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A wiring or walk that is not a continuous map into its host.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A claimed property of a map (regularity, multiplicity) does not hold.
class PropertyError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed; carries a human-readable trace.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Requested quantity has no implementation for this space or host.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Randomized construction gave up after its attempt budget.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace cwire
