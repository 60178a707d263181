#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simcoal {

// Raised when an exhaustive enumeration would exceed its configured cap.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Input-format error carrying a 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace simcoal
