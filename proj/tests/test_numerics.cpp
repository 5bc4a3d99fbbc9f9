#include <doctest.h>

#include <cmath>

#include "opoly/numerics.hpp"

using namespace opoly;

namespace {

// coarse midpoint Riemann sum in double precision, the independent oracle for
// the half-line quadrature
double riemann_oracle(double (*f)(double), double hi, double h) {
    double s = 0;
    for (double x = h / 2; x < hi; x += h) s += f(x) * h;
    return s;
}

double rho_half_integrand(double x) { return std::exp(-x - 1.0 / x) * std::pow(x, -0.5); }

bool close(const Real& a, const Real& b, double tol) { return rel_diff(a, b) < Real(tol); }

}  // namespace

TEST_SUITE("numerics") {
    TEST_CASE("context factory enforces the guard-digit budget") {
        auto ctx = PrecisionContext::make(30, 8);
        CHECK(ctx.bits >= 64);
        CHECK(ctx.target_digits <= static_cast<int>(ctx.bits * 0.30103) - 10);
        CHECK(ctx.fd_step_scale == doctest::Approx(1e-10));
        CHECK_THROWS_AS(PrecisionContext::make(0), DomainError);
    }

    TEST_CASE("half-line quadrature reproduces the Riemann oracle and the closed form") {
        double oracle = riemann_oracle(rho_half_integrand, 60.0, 1e-4);
        auto ctx = PrecisionContext::make(30);
        PrecisionScope scope(ctx.bits);
        IntegralResult r = integrate_halfline(
            [](const Real& x) { return exp(-x - 1 / x) * pow(x, Real(-0.5)); }, ctx);
        CHECK(std::abs(r.value.to_double() - oracle) < 1e-6);
        Real exact = sqrt(pi()) * exp(Real(-2));
        CHECK(close(r.value, exact, 1e-28));
        CHECK(r.error_estimate < pow10(-25));
        CHECK(r.evaluations > 0);
    }

    TEST_CASE("zero integrand integrates to zero with zero error estimate") {
        auto ctx = PrecisionContext::make(20);
        PrecisionScope scope(ctx.bits);
        IntegralResult r = integrate_halfline([](const Real&) { return Real(0); }, ctx);
        CHECK(r.value.is_zero());
        CHECK(r.error_estimate.is_zero());
    }

    TEST_CASE("linearity: subtracting two identical integrals cancels") {
        auto ctx = PrecisionContext::make(20);
        PrecisionScope scope(ctx.bits);
        auto f = [](const Real& x) { return exp(-x - 1 / x) * sqrt(x); };
        Real a = integrate_halfline(f, ctx).value;
        Real b = integrate_halfline(f, ctx).value;
        CHECK(abs(a - b) < pow10(-20) * a);
    }

    TEST_CASE("substitution identity: f(cx) c integrates to the same value") {
        auto ctx = PrecisionContext::make(25);
        PrecisionScope scope(ctx.bits);
        auto f = [](const Real& x) { return exp(-x - 1 / x) * pow(x, Real(-0.5)); };
        Real base = integrate_halfline(f, ctx).value;
        for (double c : {0.5, 2.0}) {
            Real scaled =
                integrate_halfline([&](const Real& x) { return f(Real(c) * x) * Real(c); }, ctx)
                    .value;
            CHECK(close(base, scaled, 1e-25));
        }
    }

    TEST_CASE("non-finite integrand raises DomainError") {
        auto ctx = PrecisionContext::make(15);
        PrecisionScope scope(ctx.bits);
        CHECK_THROWS_AS(
            integrate_halfline([](const Real& x) { return Real(1) / (x - x); }, ctx).value,
            DomainError);
    }

    TEST_CASE("central differences: polynomial and constant cases") {
        auto ctx = PrecisionContext::make(20);
        PrecisionScope scope(ctx.bits);
        Real d = central_difference([](const Real& y) { return y * y; }, Real(3), 1, ctx);
        CHECK(close(d, Real(6), 1e-12));
        Real dc = central_difference([](const Real&) { return Real(7); }, Real(5), 1, ctx);
        CHECK(abs(dc) < pow10(-15));
        CHECK_THROWS_AS(
            central_difference([](const Real& y) { return y; }, Real(-1), 1, ctx), DomainError);
        CHECK_THROWS_AS(
            central_difference([](const Real& y) { return y; }, Real(1), 3, ctx), DomainError);
    }

    TEST_CASE("differencing order: error at h and h/2 shrinks by a factor near 4") {
        auto ctx = PrecisionContext::make(30);
        PrecisionScope scope(ctx.bits);
        auto cube = [](const Real& y) { return y * y * y; };
        Real t0(2);
        Real exact = 3 * t0 * t0;
        Real h1(1e-4), h2(5e-5);
        Real e1 = abs(central_difference_scaled(cube, t0, 1, h1) - exact);
        Real e2 = abs(central_difference_scaled(cube, t0, 1, h2) - exact);
        Real ratio = e1 / e2;
        CHECK(ratio > Real(3.5));
        CHECK(ratio < Real(4.5));
    }

    TEST_CASE("adaptive retry: stable computation returns doubled bits") {
        auto ctx = PrecisionContext::make(20);
        auto [v, bits] = adaptive_retry_real(
            [](const PrecisionContext&) { return Real(1) + Real(1); }, ctx);
        CHECK(v == Real(2));
        CHECK(bits == 2 * ctx.bits);
    }

    TEST_CASE("adaptive retry: alternating result exhausts precision") {
        auto ctx = PrecisionContext::make(20);
        int flip = 0;
        std::function<Real(const PrecisionContext&)> comp = [&](const PrecisionContext&) {
            return Real(++flip % 2 == 0 ? 1 : -1);
        };
        CHECK_THROWS_AS(adaptive_retry_real(comp, ctx), PrecisionExhausted);
    }

    TEST_CASE("adaptive retry: rational 2x2 determinant is reproduced exactly") {
        // dyadic entries make every precision level identical
        auto ctx = PrecisionContext::make(20);
        auto [v, bits] = adaptive_retry_real(
            [](const PrecisionContext& c) {
                PrecisionScope scope(c.bits);
                Real a(0.75), b(0.5), d(2.25);
                return a * d - b * b;
            },
            ctx);
        CHECK(v == Real(0.75) * Real(2.25) - Real(0.25));
    }

    TEST_CASE("refinement monotonicity on the rho integrand") {
        // halving the starting step must not grow the error estimate
        auto f = [](const Real& x) { return exp(-x - 2 / x) * pow(x, Real(1.5)); };
        auto ctx_a = PrecisionContext::make(25);
        auto ctx_b = ctx_a;
        ctx_b.quad_step = ctx_a.quad_step / 2;
        PrecisionScope scope(ctx_a.bits);
        Real ea = integrate_halfline(f, ctx_a).error_estimate;
        Real eb = integrate_halfline(f, ctx_b).error_estimate;
        CHECK(eb <= 2 * ea);
    }
}
