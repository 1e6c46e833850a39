#pragma once

#include <stdexcept>
#include <string>

namespace f2gan {

// Every error raised by the library derives from Error so callers (the CLI in
// particular) can catch one type and still print a specific message.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix/layer shape disagreement.
struct DimensionError : Error {
    using Error::Error;
};

/// A precondition of an operation was violated by the caller.
struct ContractError : Error {
    using Error::Error;
};

/// NaN/Inf produced or consumed by a numeric routine.
struct NumericError : Error {
    using Error::Error;
};

/// Malformed CSV input; the message carries row and column coordinates.
struct ParseError : Error {
    using Error::Error;
};

/// Invalid configuration value.
struct ConfigError : Error {
    using Error::Error;
};

/// Model file that cannot be restored (version mismatch, truncation, bad shapes).
struct LoadError : Error {
    using Error::Error;
};

} // namespace f2gan
