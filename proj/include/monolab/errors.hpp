#pragma once

#include <stdexcept>
#include <string>

namespace monolab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed (NaN, non-convergence). Carries the best
/// partial value available when one exists.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, double partial = 0.0)
        : std::runtime_error(what), partial_(partial) {}
    double partial() const noexcept { return partial_; }

private:
    double partial_;
};

/// A search needed samples outside its configured range.
class RangeExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The function handed to an N-function routine does not behave like one.
class InvalidNFunction : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace monolab
