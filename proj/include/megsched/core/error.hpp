#pragma once

#include <stdexcept>
#include <string>

namespace megsched {

/// Input violates a documented invariant (parameters, traces, configuration).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based row and column when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
        : std::runtime_error(what), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// A constrained subproblem has no feasible point.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace megsched
