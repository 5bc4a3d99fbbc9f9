#include "opoly/expansion.hpp"

#include <algorithm>
#include <string>

#include "opoly/detail/gauss_legendre.hpp"
#include "opoly/laguerre.hpp"

namespace opoly {

namespace {

// Shared-node trapezoid sums of e^{-x-t/x} x^nu P_n(x) L_k(x), k = 0..k_max.
std::vector<Real> d_integrals(const RecurrenceTable& table, int n, int k_max,
                              const PrecisionContext& ctx) {
    const Real& nu = table.nu;
    const Real& t = table.t;
    constexpr int stall_limit = 6;
    const long qd =
        std::max<long>(ctx.target_digits + 5,
                       std::min<long>(static_cast<long>(ctx.bits * 0.30103) - 12,
                                      ctx.target_digits + 45));
    const Real tol = pow10(-qd);
    const Real trunc_eps = pow10(-(qd + 5));
    const int m = k_max + 1;

    std::vector<Real> lag(static_cast<size_t>(m));
    Real h(ctx.quad_step);
    std::vector<Real> prev;
    for (int level = 0; level <= ctx.quad_halvings_max; ++level, h = h / 2) {
        std::vector<Real> sums(static_cast<size_t>(m), Real(0));
        std::vector<Real> maxabs(static_cast<size_t>(m), Real(0));
        auto accumulate = [&](long idx) -> bool {
            Real u = h * Real(idx);
            Real x = exp(u);
            Real w = exp(-x - t / x + (nu + 1) * u) * table.eval(n, x);
            // Laguerre ladder across k at this node
            lag[0] = Real(1);
            if (m > 1) lag[1] = 1 + nu - x;
            for (int k = 1; k + 1 < m; ++k)
                lag[static_cast<size_t>(k) + 1] =
                    ((2 * k + nu + 1 - x) * lag[static_cast<size_t>(k)] -
                     (k + nu) * lag[static_cast<size_t>(k) - 1]) /
                    (k + 1);
            bool all_small = true;
            for (int k = 0; k < m; ++k) {
                Real v = w * lag[static_cast<size_t>(k)];
                if (!v.is_finite()) throw DomainError("d_coeffs: non-finite sample");
                sums[static_cast<size_t>(k)] += v;
                Real a = abs(v);
                if (a > maxabs[static_cast<size_t>(k)]) maxabs[static_cast<size_t>(k)] = a;
                if (a > trunc_eps * maxabs[static_cast<size_t>(k)]) all_small = false;
            }
            return all_small;
        };
        accumulate(0);
        for (int dir = -1; dir <= 1; dir += 2) {
            int stall = 0;
            for (long idx = 1; stall < stall_limit; ++idx)
                stall = accumulate(dir * idx) ? stall + 1 : 0;
        }
        Real scale(0);
        for (int k = 0; k < m; ++k) {
            sums[static_cast<size_t>(k)] *= h;
            scale = max(scale, max(abs(sums[static_cast<size_t>(k)]),
                                   maxabs[static_cast<size_t>(k)] * h));
        }
        if (level > 0) {
            bool ok = true;
            for (int k = 0; k < m && ok; ++k)
                if (abs(sums[static_cast<size_t>(k)] - prev[static_cast<size_t>(k)]) >
                    tol * max(abs(sums[static_cast<size_t>(k)]), scale))
                    ok = false;
            if (ok) return sums;
        }
        prev = std::move(sums);
    }
    throw NonConvergence("d_coeffs: no convergence within the halving budget");
}

}  // namespace

ExpansionCoeffs d_coeffs(const RecurrenceTable& table, int n, int k_max,
                         const PrecisionContext& ctx) {
    if (!(table.nu > -1)) throw DomainError("d_coeffs: nu must exceed -1");
    if (n < 0 || n > table.n_max) throw DomainError("d_coeffs: n out of range");
    PrecisionScope scope(ctx.bits);
    ExpansionCoeffs out;
    out.nu = table.nu;
    out.t = table.t;
    out.n = n;
    out.k_max = k_max;
    out.d = d_integrals(table, n, k_max, ctx);
    Real g = gamma_positive(table.nu + 1, ctx);  // Gamma(k+nu+1), walked up
    Real kfac(1);
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            kfac *= k;
            g *= table.nu + k;
        }
        out.d[static_cast<size_t>(k)] *= kfac / g;
    }
    out.h_bound = Real(0);
    return out;
}

Real d_coeff(const RecurrenceTable& table, int n, int k, const PrecisionContext& ctx) {
    return d_coeffs(table, n, k, ctx).d[static_cast<size_t>(k)];
}

Real lemma2_bound(const RecurrenceTable& table, int n, const PrecisionContext& ctx) {
    if (!(table.nu > -1)) throw DomainError("lemma2_bound: nu must exceed -1");
    PrecisionScope scope(ctx.bits);
    const Real& nu = table.nu;
    const Real& t = table.t;
    const auto& coeffs = table.row(n).coeffs;

    auto q_poly = [&](const Real& x) {  // Q_n(x) = sum |a_{n,m}| x^m / m!
        Real s(0), xp(1), mfac(1);
        for (int m = 0; m <= n; ++m) {
            if (m > 0) {
                xp *= x;
                mfac *= m;
            }
            s += abs(coeffs[static_cast<size_t>(m)]) * xp / mfac;
        }
        return s;
    };
    // y = u^2 removes the y^{-1/2} endpoint; panels graded geometrically
    // toward u = 0 to absorb the logarithmic mode of rho at 2nu+1 = 0.
    auto f = [&](const Real& u) {
        return q_poly(t - u * u) * sqrt(rho(2 * nu + 1, 2 * u * u, ctx));
    };
    const auto& gl = detail::gauss_legendre(8);
    Real umax = sqrt(t);
    Real total(0);
    Real hi = umax;
    const int levels = 8 + ctx.target_digits;  // geometric splits toward 0
    for (int j = 0; j < levels; ++j) {
        Real lo = hi / 2;
        if (j == levels - 1) lo = Real(0);
        Real mid = (hi + lo) / 2, half = (hi - lo) / 2;
        Real s(0);
        for (size_t q = 0; q < gl.nodes.size(); ++q) {
            Real u = mid + half * gl.nodes[q];
            if (!(u > 0)) continue;
            s += gl.weights[q] * f(u);
        }
        total += s * half;
        hi = hi / 2;
    }
    return pow(Real(2), nu - Real(0.5)) * 2 * total;
}

ResidualReport expansion_checks(const RecurrenceTable& table, int n_hi, int k_hi,
                                const PrecisionContext& ctx) {
    if (n_hi + 1 > table.n_max) throw DomainError("expansion_checks: table too small");
    PrecisionScope scope(ctx.bits);
    const Real& nu = table.nu;
    const Real& t = table.t;
    ReportBuilder rb(nu, t);
    const Real tol = tolerance_for(Method::quadrature, ctx);

    // d arrays for n = 0..n_hi+1, one guard column in k
    std::vector<ExpansionCoeffs> D;
    for (int n = 0; n <= n_hi + 1; ++n) D.push_back(d_coeffs(table, n, k_hi + 1, ctx));
    auto d = [&](int n, int k) -> Real {
        if (n < 0 || k < 0) return Real(0);
        return D[static_cast<size_t>(n)].d[static_cast<size_t>(k)];
    };

    // envelope bound (and the k < n zero block, which it subsumes)
    for (int n = 0; n <= n_hi; ++n) {
        Real h = lemma2_bound(table, n, ctx);
        Real worst(0);
        Real kfac(1), g = gamma_positive(nu + 1, ctx);
        for (int k = 0; k <= k_hi; ++k) {
            if (k > 0) {
                kfac *= k;
                g *= nu + k;
            }
            Real excess = abs(d(n, k)) - kfac * h / g;
            if (excess > worst) worst = excess;
        }
        rb.add("4.3", n, worst, tol, Method::quadrature);
    }

    for (int n = 0; n <= n_hi; ++n) {
        const Real& Bn = table.row(n).B;
        const Real& An1 = table.row(n + 1).A;
        Real An = table.row(n).A;
        Real ba = table.row(n).b / table.row(n).a;
        Real Bn1m = n >= 1 ? table.row(n - 1).B : Real(0);
        Real Anm = n >= 1 ? table.row(n - 1).A : Real(0);
        for (int k = 0; k <= k_hi; ++k) {
            {
                // (2k+nu+1-B_n) d_{n,k} = A_{n+1} d_{n+1,k} + (k+nu+1) d_{n,k+1}
                //                        + A_n d_{n-1,k} + k d_{n,k-1}
                Real t1 = (2 * k + nu + 1 - Bn) * d(n, k);
                Real t2 = An1 * d(n + 1, k);
                Real t3 = (k + nu + 1) * d(n, k + 1);
                Real t4 = An * d(n - 1, k);
                Real t5 = Real(k) * d(n, k - 1);
                Real sc = abs(t1) + abs(t2) + abs(t3) + abs(t4) + abs(t5);
                rb.add_scaled("4.11", n, t1, t2 + t3 + t4 + t5, max(sc, Real(1)), tol,
                              Method::quadrature);
            }
            {
                Real t1 = (2 * k + nu + 1 - n) * An1 * d(n + 1, k);
                Real t2 = -(k + nu + 1) * An1 * d(n + 1, k + 1);
                Real t3 = ((2 * k + nu + 1) * (Bn - k - nu - 2) - Real(n) * Bn + ba - t) * d(n, k);
                Real t4 = (k + nu + 1) * (k + nu + 2 - Bn) * d(n, k + 1);
                Real t5 = Real(k) * (k + nu + 2) * d(n, k - 1);
                Real t6 = An * (2 * k + 2 * nu + 2 + n - Bn1m - Bn) * d(n - 1, k);
                Real t7 = -(k + nu + 1) * An * d(n - 1, k + 1);
                Real t8 = -An * Anm * d(n - 2, k);
                Real sum = t1 + t2 + t3 + t4 + t5 + t6 + t7 + t8;
                Real sc(1);
                for (const Real& v : {t1, t2, t3, t4, t5, t6, t7, t8}) sc += abs(v);
                rb.add_scaled("4.12", n, sum, Real(0), sc, tol, Method::quadrature);
            }
        }
    }
    return rb.take();
}

ResidualReport rodrigues_truncation(const RecurrenceTable& table, int n, int K,
                                    const std::vector<Real>& x_samples,
                                    const PrecisionContext& ctx) {
    if (!(table.nu > Real(1.5)))
        throw DomainError("rodrigues_truncation: series convergence needs nu > 3/2");
    PrecisionScope scope(ctx.bits);
    ReportBuilder rb(table.nu, table.t);
    ExpansionCoeffs D = d_coeffs(table, n, 2 * K, ctx);
    for (int cap : {K, 2 * K}) {
        Real sup(0);
        for (const Real& x : x_samples) {
            Real target = exp(-table.t / x) * table.eval(n, x);
            Real s(0);
            for (int k = n; k <= cap; ++k)
                s += D.d[static_cast<size_t>(k)] * laguerre_eval(k, table.nu, x, ctx);
            sup = max(sup, abs(target - s));
        }
        // n slot records the truncation order; residual is the sup error
        rb.add("4.10", cap, sup, max(Real(1e-6), pow10(-(ctx.target_digits / 4))),
               Method::quadrature);
    }
    return rb.take();
}

std::pair<Real, Real> generating_partial(const RecurrenceTable& table, const Real& x,
                                         const Real& w, int N, const PrecisionContext& ctx) {
    if (N > table.n_max) throw DomainError("generating_partial: N exceeds the table");
    PrecisionScope scope(ctx.bits);
    Real sum(0), wn(1), nfac(1);
    for (int n = 0; n <= N; ++n) {
        if (n > 0) {
            wn *= w;
            nfac *= n;
        }
        sum += table.eval(n, x) * wn / nfac;
    }
    // tail sum_{n>N} |w|^n/n! of the L2-norm bound; terms collapse fast
    Real tail(0), aw = abs(w), term = pow(aw, N + 1);
    Real fac = factorial(N + 1);
    term /= fac;
    for (int n = N + 1; n < N + 200; ++n) {
        tail += term;
        term *= aw / (n + 1);
        if (term < tail * pow10(-(ctx.target_digits + 10)) && n > N + 4) break;
    }
    return {sum, tail};
}

}  // namespace opoly
