#pragma once

#include <stdexcept>
#include <string>

namespace levy {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A gamma function was evaluated on one of its poles {0, -1, -2, ...}.
class PoleError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A Wright series violates sum(B) - sum(A) > -1.
class ConvergenceGateError : public Error {
public:
    using Error::Error;
};

/// The series stopping rule did not fire within the configured term cap.
class TermCapExceeded : public Error {
public:
    using Error::Error;
};

/// No evaluation path could certify the requested number of digits.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// A representation produced a series that fails its own convergence gate.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// The two independent oracle methods disagree beyond tolerance.
class OracleDisagreement : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature failed to reach its tolerance within its node budget.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Requested moment of order nu >= alpha, which is infinite.
class DivergentMoment : public Error {
public:
    using Error::Error;
};

}  // namespace levy
