#pragma once

#include <stdexcept>
#include <string>

namespace lsgs {

// Invalid configuration or usage (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid data or numeric failure (CLI exit code 1).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
public:
    using DataError::DataError;
};

// Binary/CSV layout violations; messages carry the byte offset where known.
class FormatError : public DataError {
public:
    using DataError::DataError;
};

class ValidationError : public DataError {
public:
    using DataError::DataError;
};

class DimensionError : public DataError {
public:
    using DataError::DataError;
};

class NumericError : public DataError {
public:
    using DataError::DataError;
};

class DivergenceError : public DataError {
public:
    using DataError::DataError;
};

} // namespace lsgs
