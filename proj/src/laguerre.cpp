#include "opoly/laguerre.hpp"

namespace opoly {

Real gamma_positive(const Real& z, const PrecisionContext& ctx) {
    if (!(z > 0)) throw DomainError("gamma_positive: argument must be positive");
    PrecisionScope scope(ctx.bits);
    IntegralResult r =
        integrate_halfline([&](const Real& x) { return exp(-x + (z - 1) * log(x)); }, ctx);
    return r.value;
}

Real laguerre_eval(int n, const Real& nu, const Real& x, const PrecisionContext& ctx) {
    if (n < 0) throw DomainError("laguerre_eval: n must be nonnegative");
    PrecisionScope scope(ctx.bits);
    Real lm(1);
    if (n == 0) return lm;
    Real lc = 1 + nu - x;
    for (int k = 1; k < n; ++k) {
        // (k+1) L_{k+1} = (2k+nu+1-x) L_k - (k+nu) L_{k-1}
        Real ln = ((2 * k + nu + 1 - x) * lc - (k + nu) * lm) / (k + 1);
        lm = lc;
        lc = ln;
    }
    return lc;
}

Real normalized_laguerre(int n, const Real& nu, const Real& x, const PrecisionContext& ctx) {
    if (!(nu > -1)) throw DomainError("normalized_laguerre: nu must exceed -1");
    PrecisionScope scope(ctx.bits);
    Real norm = sqrt(factorial(n) / gamma_positive(nu + n + 1, ctx));
    return norm * laguerre_eval(n, nu, x, ctx);
}

Real limit_values(int n, const Real& nu, LimitWhich which, const PrecisionContext& ctx) {
    if (n < 0) throw DomainError("limit_values: n must be nonnegative");
    const bool derivative = which == LimitWhich::a_prime || which == LimitWhich::b_prime ||
                            which == LimitWhich::A_prime || which == LimitWhich::B_prime ||
                            which == LimitWhich::a0_prime;
    if (derivative && !(nu > 0)) throw DomainError("limit_values: derivative set needs nu > 0");
    if (!(nu > -1)) throw DomainError("limit_values: value set needs nu > -1");
    PrecisionScope scope(ctx.bits);

    const Real sgn_n = (n % 2 == 0) ? Real(1) : Real(-1);
    auto norm = [&] { return sqrt(factorial(n) * gamma_positive(nu + n + 1, ctx)); };

    switch (which) {
        case LimitWhich::a:
            return sgn_n / norm();
        case LimitWhich::b: {
            if (n == 0) return Real(0);
            Real r = sqrt(Real(n) * (n + nu) / (factorial(n - 1) * gamma_positive(nu + n, ctx)));
            return -sgn_n * r;
        }
        case LimitWhich::A:
            return n == 0 ? Real(0) : -sqrt(Real(n) * (n + nu));
        case LimitWhich::B:
            return Real(2 * n + 1) + nu;
        case LimitWhich::a0:
            return sqrt(gamma_positive(nu + n + 1, ctx) / factorial(n)) /
                   gamma_positive(nu + 1, ctx);
        case LimitWhich::A_prime:
            return Real(0);
        case LimitWhich::B_prime:
            return 1 / nu;
        case LimitWhich::a_prime:
            return sgn_n / (2 * nu * norm());
        case LimitWhich::b_prime:
            return -sgn_n * Real(n) * (n + nu + 2) / (2 * nu * norm());
        case LimitWhich::a0_prime:
            return sqrt(gamma_positive(nu + n + 1, ctx) / factorial(n)) /
                   (2 * nu * gamma_positive(nu + 1, ctx));
    }
    throw DomainError("limit_values: unknown selector");
}

}  // namespace opoly
