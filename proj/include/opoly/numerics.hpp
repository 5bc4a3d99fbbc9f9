#ifndef OPOLY_NUMERICS_HPP
#define OPOLY_NUMERICS_HPP

#include <functional>
#include <utility>

#include "opoly/errors.hpp"
#include "opoly/real.hpp"

namespace opoly {

// Working precision, quadrature refinement and differencing parameters shared
// by every pipeline. Immutable after construction; cheap to copy.
struct PrecisionContext {
    long bits = 256;            // binary working precision
    int target_digits = 30;     // requested correct decimal digits
    double quad_step = 0.5;     // initial trapezoid step on the u-line
    int quad_halvings_max = 10;
    double fd_step_scale = 1e-10;  // relative step for central differences

    // bits = max(128, ceil(3.33*digits) + 12*n_max); fd step 10^(-digits/3).
    // The 12*n_max headroom absorbs the growth of Hankel condition numbers.
    static PrecisionContext make(int target_digits, int n_max = 8);

    PrecisionContext with_bits(long b) const {
        PrecisionContext c = *this;
        c.bits = b;
        return c;
    }
    PrecisionContext with_digits(int d, int n_max = 8) const;
};

// Hard cap on adaptive precision; OPOLY_MAX_BITS overrides the 8192 default.
long max_bits();

struct IntegralResult {
    Real value;
    Real error_estimate;  // |difference of the last two refinement levels|
    long evaluations = 0;
};

// Integral of f over (0, inf) by the trapezoidal rule after x = e^u, with the
// step halved until two successive levels agree to 10^-target_digits relative.
// Requires integrands that decay double-exponentially (or faster) in u on both
// sides, which holds for everything built on the factor e^{-x-t/x}, t > 0.
IntegralResult integrate_halfline(const std::function<Real(const Real&)>& f,
                                  const PrecisionContext& ctx);

// Central difference estimate of f^(order) at t0 with step h = t0*fd_step_scale.
// Accuracy is O(h^2); callers must use tolerances consistent with that.
Real central_difference(const std::function<Real(const Real&)>& f, const Real& t0,
                        int order, const PrecisionContext& ctx);
// Same, with an explicit relative step (used by refinement-monotonicity checks).
Real central_difference_scaled(const std::function<Real(const Real&)>& f, const Real& t0,
                               int order, const Real& rel_step);

// Runs `computation` at ctx.bits and 2*ctx.bits and keeps doubling (at most 4
// times, capped by max_bits()) until two successive results agree to
// target_digits; `distance` maps a result pair to a relative discrepancy.
// Returns the higher-precision result and the bits it was computed at.
template <typename T>
std::pair<T, long> adaptive_retry(const std::function<T(const PrecisionContext&)>& computation,
                                  const PrecisionContext& ctx,
                                  const std::function<Real(const T&, const T&)>& distance) {
    const Real tol = pow10(-ctx.target_digits);
    long bits = ctx.bits;
    T prev = computation(ctx.with_bits(bits));
    for (int doubling = 1; doubling <= 4; ++doubling) {
        long next_bits = bits * 2;
        if (next_bits > max_bits()) break;
        T cur = computation(ctx.with_bits(next_bits));
        if (distance(prev, cur) <= tol) return {std::move(cur), next_bits};
        prev = std::move(cur);
        bits = next_bits;
    }
    throw PrecisionExhausted("adaptive_retry: result did not stabilize by " +
                             std::to_string(bits) + " bits");
}

inline std::pair<Real, long> adaptive_retry_real(
    const std::function<Real(const PrecisionContext&)>& computation, const PrecisionContext& ctx) {
    return adaptive_retry<Real>(computation, ctx,
                                [](const Real& a, const Real& b) { return rel_diff(a, b); });
}

}  // namespace opoly

#endif
