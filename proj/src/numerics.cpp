#include "opoly/numerics.hpp"

#include <cmath>
#include <cstdlib>

namespace opoly {

PrecisionContext PrecisionContext::make(int target_digits, int n_max) {
    if (target_digits < 1) throw DomainError("target_digits must be positive");
    if (n_max < 0) n_max = 0;
    PrecisionContext c;
    c.target_digits = target_digits;
    c.bits = std::max<long>(128, static_cast<long>(std::ceil(3.33 * target_digits)) + 12L * n_max);
    // keep the guard-digit invariant: target_digits <= floor(bits*log10(2)) - 10
    long need = static_cast<long>(std::ceil((target_digits + 10) / 0.30103)) + 1;
    if (c.bits < need) c.bits = need;
    if (c.bits > max_bits()) c.bits = max_bits();
    c.quad_step = 0.5;
    c.quad_halvings_max = 10;
    c.fd_step_scale = std::pow(10.0, -target_digits / 3.0);
    return c;
}

PrecisionContext PrecisionContext::with_digits(int d, int n_max) const {
    PrecisionContext c = make(d, n_max);
    return c;
}

long max_bits() {
    static long cap = [] {
        if (const char* env = std::getenv("OPOLY_MAX_BITS")) {
            long v = std::atol(env);
            if (v >= 128) return v;
        }
        return 8192L;
    }();
    return cap;
}

namespace {

// One trapezoid level at step h: scans outward from u = 0 until the integrand
// has decayed below trunc_eps times its running maximum for several samples in
// a row. Returns h * sum(g(k h)) and tracks the largest |g| seen.
struct LevelSum {
    Real sum;
    Real max_abs;
    long evals = 0;
};

LevelSum trapezoid_level(const std::function<Real(const Real&)>& f, const Real& h,
                         const Real& trunc_eps, long eval_budget) {
    constexpr int stall_limit = 6;
    LevelSum out;
    out.sum = Real(0);
    out.max_abs = Real(0);

    auto sample = [&](long k) {
        Real u = h * Real(k);
        Real x = exp(u);
        Real g = f(x) * x;  // jacobian of x = e^u
        if (g.is_nan() || !g.is_finite())
            throw DomainError("integrate_halfline: non-finite integrand sample");
        ++out.evals;
        return g;
    };

    Real g0 = sample(0);
    out.sum = g0;
    out.max_abs = abs(g0);

    for (int dir = -1; dir <= 1; dir += 2) {
        int stall = 0;
        for (long k = 1; stall < stall_limit; ++k) {
            if (out.evals > eval_budget)
                throw NonConvergence("integrate_halfline: evaluation budget exhausted");
            Real g = sample(dir * k);
            out.sum += g;
            Real a = abs(g);
            if (a > out.max_abs) out.max_abs = a;
            if (a <= trunc_eps * out.max_abs)
                ++stall;
            else
                stall = 0;
        }
    }
    out.sum *= h;
    return out;
}

}  // namespace

IntegralResult integrate_halfline(const std::function<Real(const Real&)>& f,
                                  const PrecisionContext& ctx) {
    if (ctx.quad_step <= 0) throw DomainError("quad_step must be positive");
    PrecisionScope scope(ctx.bits);

    // 5 guard digits beyond the contract so downstream precision-doubling
    // comparisons have headroom.
    const Real tol = pow10(-(ctx.target_digits + 5));
    const Real trunc_eps = pow10(-(ctx.target_digits + 10));
    const long eval_budget = 2'000'000;

    IntegralResult res;
    Real h(ctx.quad_step);
    LevelSum prev = trapezoid_level(f, h, trunc_eps, eval_budget);
    res.evaluations = prev.evals;
    for (int level = 1; level <= ctx.quad_halvings_max; ++level) {
        h = h / 2;
        LevelSum cur = trapezoid_level(f, h, trunc_eps, eval_budget - res.evaluations);
        res.evaluations += cur.evals;
        Real delta = abs(cur.sum - prev.sum);
        res.value = cur.sum;
        res.error_estimate = delta;
        Real scale = max(abs(cur.sum), cur.max_abs);
        if (delta <= tol * scale) return res;
        prev = cur;
    }
    throw NonConvergence("integrate_halfline: no convergence after " +
                         std::to_string(ctx.quad_halvings_max) + " halvings");
}

Real central_difference_scaled(const std::function<Real(const Real&)>& f, const Real& t0,
                               int order, const Real& rel_step) {
    if (!(t0 > 0)) throw DomainError("central_difference: t0 must be positive");
    Real h = t0 * rel_step;
    Real tp = t0 + h, tm = t0 - h;
    if (!(tm > 0)) throw DomainError("central_difference: stencil point not positive");
    if (order == 1) {
        Real fp = f(tp), fm = f(tm);
        if (!fp.is_finite() || !fm.is_finite())
            throw DomainError("central_difference: non-finite sample");
        return (fp - fm) / (2 * h);
    }
    if (order == 2) {
        Real fp = f(tp), fc = f(t0), fm = f(tm);
        if (!fp.is_finite() || !fc.is_finite() || !fm.is_finite())
            throw DomainError("central_difference: non-finite sample");
        return (fp - 2 * fc + fm) / (h * h);
    }
    throw DomainError("central_difference: order must be 1 or 2");
}

Real central_difference(const std::function<Real(const Real&)>& f, const Real& t0, int order,
                        const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.bits);
    return central_difference_scaled(f, t0, order, Real(ctx.fd_step_scale));
}

}  // namespace opoly
