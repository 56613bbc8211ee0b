#pragma once

#include <stdexcept>
#include <string>

namespace hetnet {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value outside the domain of a model function (e.g. a load outside [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

// A scenario or type invariant was violated at construction time.
class InvariantError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// The instance is too small for the requested operation (e.g. a pair move with one SBS).
class DegenerateInstance : public Error {
public:
    using Error::Error;
};

// The solver declines to run, e.g. exhaustive enumeration above its cap.
class Refusal : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace hetnet
