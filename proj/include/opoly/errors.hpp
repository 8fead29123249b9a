#pragma once

#include <stdexcept>
#include <string>

namespace opoly {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Index or horizon outside the stored data.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Generator parameters violate their structural constraints.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// A recurrence coefficient that must be nonzero vanished.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// Operation requested on an object whose prerequisites were not met.
class StateError : public Error {
public:
    using Error::Error;
};

/// Iterative solver failed to converge.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Nodes too close together for a stable Christoffel number.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// The functional relation u = h v cannot be fitted.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// A theorem's hypotheses do not hold for this input.
class InapplicableError : public Error {
public:
    using Error::Error;
};

} // namespace opoly
