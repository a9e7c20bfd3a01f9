#pragma once

#include <stdexcept>
#include <string>

namespace dampresp {

// Base for every error raised by the library. `operation()` names the
// public operation that failed so callers (the CLI in particular) can
// report it without parsing the message.
class Error : public std::runtime_error {
public:
    Error(std::string operation, const std::string& what)
        : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}

    const std::string& operation() const noexcept { return operation_; }

private:
    std::string operation_;
};

// Parameters violate a documented invariant or precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Operation is not defined for this input class (e.g. pointwise K'' of a
// discrete spectrum, which is a sum of delta functions).
class UnsupportedEvaluation : public Error {
public:
    using Error::Error;
};

// Base for numerical failures: singular denominators, poles, quadrature
// that does not converge, simulations that do not reach steady state.
class NumericError : public Error {
public:
    NumericError(std::string operation, const std::string& what, double residual = 0.0)
        : Error(std::move(operation), what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class SingularityError : public NumericError {
public:
    using NumericError::NumericError;
};

class PoleError : public NumericError {
public:
    using NumericError::NumericError;
};

class DivergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace dampresp
