#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ndgen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid option value or inconsistent option combination.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Index outside the valid range of the referenced collection.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Inconsistent vector or matrix dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. Carries the 1-based line number (0 when unknown).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Numerical procedure could not reach its target.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double momentError, double corrError)
        : Error(what), momentError_(momentError), corrError_(corrError) {}

    double momentError() const noexcept { return momentError_; }
    double corrError() const noexcept { return corrError_; }

private:
    double momentError_;
    double corrError_;
};

/// The simplex hit its pivot limit. Never reported as infeasibility.
class SolverStall : public Error {
public:
    using Error::Error;
};

} // namespace ndgen
