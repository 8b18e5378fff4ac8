#pragma once

#include <stdexcept>
#include <string>

namespace rcop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input exceeds a documented brute-force limit.
class ScopeError : public Error {
public:
    using Error::Error;
};

/// A permutation does not preserve the graph it is applied to.
class InvarianceError : public Error {
public:
    using Error::Error;
};

/// Matrix or vector dimensions do not agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A dual-cone point was required and the argument is not one.
class DualMembershipError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Iterative solver did not reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// U^T Z U does not land in the claimed block realization.
class ConjugationError : public Error {
public:
    using Error::Error;
};

/// Prior hyperparameters make the normalizing integral diverge.
class IntegrabilityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An operation needs a matrix realization that is not available.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or argument.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace rcop
