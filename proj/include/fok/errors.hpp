#pragma once
// Error taxonomy shared by all modules.
//
// Everything derives from fok::Error so callers can catch the library
// as a whole; the CLI maps ConfigError/ParseError to exit code 2.

#include <stdexcept>
#include <string>

namespace fok {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric argument is outside its documented range.
struct RangeError : Error {
    using Error::Error;
};

// Vector lengths disagree (cue vs cell, trace vs dimension).
struct DimensionError : Error {
    using Error::Error;
};

// Exact enumeration requested for a state space too large to walk.
struct FeasibilityError : Error {
    using Error::Error;
};

// An identifier is already taken.
struct ConflictError : Error {
    using Error::Error;
};

// Cross-referenced data disagrees (registry trace vs stored trace).
struct IntegrityError : Error {
    using Error::Error;
};

// A call was made outside its documented protocol.
struct ContractError : Error {
    using Error::Error;
};

// Scenario/grid configuration is invalid; message names the field.
struct ConfigError : Error {
    using Error::Error;
};

// A log line could not be parsed; message carries the line number.
struct ParseError : Error {
    using Error::Error;
};

} // namespace fok
