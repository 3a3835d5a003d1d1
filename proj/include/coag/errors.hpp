#pragma once

#include <stdexcept>
#include <string>

namespace coag {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments or an operation applied outside its contract.
struct DomainError : Error {
    using Error::Error;
};

// Pointwise evaluation requested for a kernel that is a measure, not a function.
struct DistributionalKernel : DomainError {
    using DomainError::DomainError;
};

// Gamma/digamma evaluated at a nonpositive integer.
struct PoleError : DomainError {
    using DomainError::DomainError;
};

// Numerical failures. The CLI maps these to exit code 3.
struct NumericalError : Error {
    using Error::Error;
};

struct QuadratureNotConverged : NumericalError {
    using NumericalError::NumericalError;
};

struct NoRootFound : NumericalError {
    using NumericalError::NumericalError;
};

struct SeriesDiverged : NumericalError {
    using NumericalError::NumericalError;
};

struct NegativeValue : NumericalError {
    using NumericalError::NumericalError;
};

struct WindowTooSmall : NumericalError {
    using NumericalError::NumericalError;
};

struct FrontNotFound : NumericalError {
    using NumericalError::NumericalError;
};

struct BlowUp : NumericalError {
    using NumericalError::NumericalError;
};

struct NegativityBreach : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace coag
