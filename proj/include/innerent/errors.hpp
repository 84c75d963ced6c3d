#pragma once

#include <stdexcept>

namespace innerent {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point or parameter lies outside the domain of the operation
/// (for example a "disk point" of modulus >= 1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The logarithmic derivative was requested at a zero of the function.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A computed quantity violates an identity it must satisfy
/// (Schwarz-Pick excess, for instance). Signals an evaluation bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Adaptive work budget exhausted before reaching the requested tolerance.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Hypothesis of a checker not met (f(0) != 0, M <= 2, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Input cannot be represented exactly where exact arithmetic is required.
class RepresentationError : public Error {
public:
    using Error::Error;
};

/// Malformed JSON input.
class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace innerent
