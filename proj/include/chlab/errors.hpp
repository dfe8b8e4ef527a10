#pragma once

#include <stdexcept>
#include <string>

namespace chlab {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A field contains NaN or Inf samples.
struct InvalidFieldError : Error {
    using Error::Error;
};

// A spectrum violates Hermitian symmetry beyond tolerance (would not
// invert to a real field).
struct SpectrumError : Error {
    using Error::Error;
};

// Bad configuration: constraint violations, parse failures, unresolvable
// requests (out-of-range dyadic block, unknown config key, ...).
struct ConfigError : Error {
    using Error::Error;
};

// Snapshot file problems: bad magic, version, truncation.
struct FormatError : Error {
    using Error::Error;
};

// A time step produced a non-finite stage; carries the simulation time at
// which the blow-up was observed.
struct InstabilityError : Error {
    InstabilityError(const std::string& msg, double t)
        : Error(msg), time(t) {}
    double time;
};

// Degenerate probe input (zero denominator and the like).
struct ProbeError : Error {
    using Error::Error;
};

// Least-squares fit could not be performed (rank-deficient design, ...).
struct FitError : Error {
    using Error::Error;
};

// Safeguarded Newton failed to converge.
struct RootFindError : Error {
    using Error::Error;
};

} // namespace chlab
