#pragma once

#include <stdexcept>
#include <string>

namespace chirplike {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates an operation's precondition.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Input text (CSV, JSON) could not be parsed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Base for failures of the numerical machinery itself.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// Z^T Z is singular to working precision.
class DegenerateDesign : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// An iterative routine exhausted its evaluation budget.
class NonConvergence : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

} // namespace chirplike
