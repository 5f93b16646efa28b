#pragma once

#include <stdexcept>
#include <string>

namespace ulocal {

// Thrown when two values built over different prime contexts are combined.
struct ContextMismatchError : std::runtime_error {
    explicit ContextMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a valuation answer of ">= N" is hit on a quantity that must be
// finite, or when an algorithm runs out of working digits.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an enumeration or count would exceed the configured budget.
// `estimate` is the projected number of elementary operations.
struct BudgetError : std::runtime_error {
    BudgetError(const std::string& what, double estimate_)
        : std::runtime_error(what), estimate(estimate_) {}
    double estimate;
};

// Thrown on invalid arguments (singular matrix, parity violation, bad range).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when two independent computation routes disagree. Always a bug.
struct CrossCheckError : std::logic_error {
    explicit CrossCheckError(const std::string& what) : std::logic_error(what) {}
};

} // namespace ulocal
