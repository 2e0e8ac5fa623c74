#pragma once

#include <stdexcept>
#include <string>

namespace adiso {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A circuit or pump parameter violates its documented invariant.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of the operation (position, frequency).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The ODE integrator could not reach the end of the device.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double position, double drift)
        : Error(what), position_(position), drift_(drift) {}

    /// Position (cells) reached before the failure.
    double position() const noexcept { return position_; }
    /// Norm drift observed at failure, 0 when not applicable.
    double drift() const noexcept { return drift_; }

private:
    double position_;
    double drift_;
};

/// The boundary-value linear system is singular or ill-conditioned.
class ScatteringError : public Error {
public:
    using Error::Error;
};

/// The oscillatory quadrature did not converge under step halving.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// A sweep failed at a particular frequency.
class SweepError : public Error {
public:
    SweepError(const std::string& what, double frequency_hz)
        : Error(what), frequency_hz_(frequency_hz) {}

    double frequency_hz() const noexcept { return frequency_hz_; }

private:
    double frequency_hz_;
};

} // namespace adiso
