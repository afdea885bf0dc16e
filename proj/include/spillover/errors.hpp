#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spillover {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data. `line` is 1-based when the source is a text stream.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Regressor cross-moment matrix is numerically singular.
class SingularDesignError : public Error {
public:
    SingularDesignError(const std::string& what, double condition)
        : Error(what), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

// A forecast-error variance denominator vanished for some variable.
class DegenerateVarianceError : public Error {
public:
    DegenerateVarianceError(const std::string& what, int variable)
        : Error(what), variable_(variable) {}
    int variable() const { return variable_; }

private:
    int variable_;
};

// Not enough observations to satisfy an operation's precondition.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

}  // namespace spillover
