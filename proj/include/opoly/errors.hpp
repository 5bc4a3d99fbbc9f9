#ifndef OPOLY_ERRORS_HPP
#define OPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opoly {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature refinement exhausted without meeting the digit target.
struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

// Bad argument or non-finite function value at an evaluation point.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Precision doubling did not stabilize the result within the allowed retries.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

// A moment table failed its own three-term self-check.
struct RecurrenceViolation : Error {
    explicit RecurrenceViolation(const std::string& msg) : Error(msg) {}
};

// Cholesky hit a nonpositive pivot; the true moment matrix is positive
// definite, so this signals a moment-computation bug.
struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& msg) : Error(msg) {}
};

struct DegenerateDenominator : Error {
    explicit DegenerateDenominator(const std::string& msg) : Error(msg) {}
};

// Sturm-count inconsistency in the tridiagonal eigensolver.
struct EigenFailure : Error {
    explicit EigenFailure(const std::string& msg) : Error(msg) {}
};

// Successive t-grid refinements disagree beyond tolerance.
struct GridTooCoarse : Error {
    explicit GridTooCoarse(const std::string& msg) : Error(msg) {}
};

}  // namespace opoly

#endif
