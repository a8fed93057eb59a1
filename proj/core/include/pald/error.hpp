#pragma once

#include <stdexcept>
#include <string>

namespace pald {

// Coarse error categories, stable across releases; the CLI maps them to
// exit codes and prints the token so scripts can dispatch on failures.
enum class ErrorCategory {
    config,      // bad run configuration (flags, missing seed, ...)
    parse,       // malformed input file
    structural,  // dimension/role/index misuse of an API
    validation,  // array property or conservation violation
    io,          // filesystem failures
};

const char* to_string(ErrorCategory cat);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& what)
        : std::runtime_error(what), cat_(cat) {}
    ErrorCategory category() const { return cat_; }

private:
    ErrorCategory cat_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorCategory::parse, what) {}
};

class StructuralError : public Error {
public:
    explicit StructuralError(const std::string& what) : Error(ErrorCategory::structural, what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorCategory::validation, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

}  // namespace pald
