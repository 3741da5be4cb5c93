#ifndef NWAVE_ERRORS_HPP
#define NWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nwave {

/// Base of every library error. The CLI maps these to exit code 1, except
/// VerificationFailure which maps to 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    NoSignChange(double lo, double hi, double flo, double fhi);
    double lo, hi, flo, fhi;
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double estimate)
        : Error(what), estimate(estimate) {}
    double estimate;
};

class SeriesOverflow : public Error {
public:
    using Error::Error;
};

/// Evaluation requested outside the interval where a series is known to converge.
class NotCertified : public Error {
public:
    using Error::Error;
};

class BlowUp : public Error {
public:
    using Error::Error;
};

class InconclusiveTail : public Error {
public:
    using Error::Error;
};

class NoCrossing : public Error {
public:
    using Error::Error;
};

class InsufficientPoints : public Error {
public:
    using Error::Error;
};

/// Two independent computations of the same quantity disagreed.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// Invalid simulation configuration (CFL, delay/step mismatch, unknown preset).
class ConfigError : public Error {
public:
    using Error::Error;
};

class VerificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace nwave

#endif
