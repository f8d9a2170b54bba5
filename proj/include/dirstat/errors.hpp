#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dirstat {

/// A precondition on an argument value was violated (κ < 0, |x| > n, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operands live in different ambient dimensions.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The data admit no finite/defined estimate: R̄ = 0 (no direction) or R̄ = 1 (κ = ∞).
class DegenerateSampleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative procedure (root finder, series) did not meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The result does not fit in a double; use the log-domain variant.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Malformed input file; carries the 1-based line number (0 when not line-specific).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Required bundled data (manifest or data file) is absent or fails verification.
class MissingDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dirstat
