#pragma once

#include <stdexcept>
#include <string>

namespace ddefit {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A query time does not coincide with any grid node.
struct NotOnGrid : Error {
    using Error::Error;
};

// Too few points, non-increasing knots, or an otherwise unusable input.
struct DegenerateInput : Error {
    using Error::Error;
};

// Vector/matrix operands of incompatible dimension.
struct DimensionMismatch : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

// A solver state picked up a NaN or Inf component (trajectory blow-up).
struct NonFiniteState : Error {
    using Error::Error;
};

// A model denominator hit zero.
struct SingularDynamics : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace ddefit
