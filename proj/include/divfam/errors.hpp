#pragma once

#include <stdexcept>
#include <string>

namespace divfam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Modulus is not prime where a field is required, or otherwise unusable.
struct ModulusError : Error {
    using Error::Error;
};

// Vector/matrix length or modulus mismatch.
struct ShapeError : Error {
    using Error::Error;
};

// Enumeration or search exceeded its configured budget.
struct BudgetError : Error {
    using Error::Error;
};

// Invalid construction parameters (overlapping atoms, bad partition, ...).
struct SpecError : Error {
    using Error::Error;
};

// Structure-theorem precondition violated (all-zero column, thin column, ...).
struct StructureError : Error {
    using Error::Error;
};

// Family text format error; carries a 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

}  // namespace divfam
