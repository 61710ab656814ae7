#pragma once

#include <stdexcept>
#include <string>

namespace spacetok {

// Base class for all library errors. Each subclass maps to a distinct
// CLI exit code (see tools/).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration: vocab size below minimum, empty corpus, bad flags.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed model files, unknown dataset formats, bad rows.
class FormatError : public Error {
public:
    using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
public:
    using Error::Error;
};

// A pretoken the current vocabulary cannot segment.
class CoverageError : public Error {
public:
    using Error::Error;
};

// Raw input that conflicts with the normalization contract,
// e.g. it already contains the space symbol.
class NormalizationError : public Error {
public:
    using Error::Error;
};

// Input that is not valid UTF-8.
class DecodeError : public Error {
public:
    using Error::Error;
};

} // namespace spacetok
