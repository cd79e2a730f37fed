#ifndef FIMCAST_ERRORS_HPP
#define FIMCAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fimcast {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Size/shape violations: series too short, mismatched vector lengths,
/// infeasible training sizes. Messages name the required minimum where known.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid input data (parse failures, non-finite samples,
/// missing metadata).
class DataError : public Error {
public:
    using Error::Error;
};

/// Numerical failures: integration blow-up, arithmetic overflow.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Inconsistent configuration (model/series mismatch, invalid parameters).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace fimcast

#endif
