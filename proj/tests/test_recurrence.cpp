#include <doctest.h>

#include "opoly/identities.hpp"
#include "opoly/laguerre.hpp"
#include "opoly/quadrature.hpp"

using namespace opoly;

TEST_SUITE("recurrence") {
    TEST_CASE("closed-form anchor at nu = -1/2, t = 1") {
        auto ctx = PrecisionContext::make(30, 4);
        PrecisionScope scope(ctx.bits);
        RecurrenceTable tab = build_recurrence(Real(-0.5), Real(1), 4, ctx);
        CHECK(rel_diff(tab.row(0).B, Real(1.5)) < pow10(-25));
        CHECK(rel_diff(tab.row(1).A, Real(-1)) < pow10(-25));
        // mu_0 = sqrt(pi) e^{-2}
        CHECK(rel_diff(tab.mu0(), sqrt(pi()) * exp(Real(-2))) < pow10(-25));
    }

    TEST_CASE("degree-zero table") {
        auto ctx = PrecisionContext::make(20);
        PrecisionScope scope(ctx.bits);
        RecurrenceTable tab = build_recurrence(Real(1.25), Real(2), 0, ctx);
        const auto& r = tab.row(0);
        CHECK(r.b.is_zero());
        CHECK(r.A.is_zero());
        CHECK(rel_diff(r.a, 1 / sqrt(rho(Real(2.25), Real(2), ctx))) < pow10(-15));
        CHECK(rel_diff(r.B, rho(Real(3.25), Real(2), ctx) / rho(Real(2.25), Real(2), ctx)) <
              pow10(-15));
    }

    TEST_CASE("sign convention, positivity and the B_n lower bound") {
        auto ctx = PrecisionContext::make(20, 8);
        PrecisionScope scope(ctx.bits);
        for (double nu : {-0.5, 1.0}) {
            for (double t : {0.3, 4.0}) {
                RecurrenceTable tab = build_recurrence(Real(nu), Real(t), 8, ctx);
                for (int n = 0; n <= 8; ++n) {
                    const auto& r = tab.row(n);
                    CHECK(r.a.sign() == (n % 2 == 0 ? 1 : -1));
                    if (n >= 1) CHECK(r.A < 0);
                    CHECK(r.B > 0);
                    CHECK(r.B > Real(2 * n) + nu + 1);
                    CHECK(r.coeffs[static_cast<size_t>(n)] == r.a);
                    if (n >= 1) CHECK(r.coeffs[static_cast<size_t>(n) - 1] == r.b);
                }
            }
        }
    }

    TEST_CASE("equation coherence: A_n a_n = a_{n-1} and B_n = b_n/a_n - b_{n+1}/a_{n+1}") {
        auto ctx = PrecisionContext::make(25, 6);
        PrecisionScope scope(ctx.bits);
        RecurrenceTable tab = build_recurrence(Real(0.75), Real(1.5), 6, ctx);
        for (int n = 1; n <= 6; ++n) {
            CHECK(rel_diff(tab.row(n).A * tab.row(n).a, tab.row(n - 1).a) < pow10(-20));
            if (n < 6) {
                Real rhs = tab.row(n).b / tab.row(n).a - tab.row(n + 1).b / tab.row(n + 1).a;
                CHECK(rel_diff(tab.row(n).B, rhs) < pow10(-18));
            }
        }
    }

    TEST_CASE("Laguerre limit: the small-t build matches the closed forms") {
        auto ctx = PrecisionContext::make(30, 4);
        PrecisionScope scope(ctx.bits);
        RecurrenceTable tab = build_recurrence(Real(0.5), Real(1e-24), 4, ctx);
        for (int n = 0; n <= 4; ++n) {
            CHECK(abs(tab.row(n).B - limit_values(n, Real(0.5), LimitWhich::B, ctx)) <
                  pow10(-10));
            CHECK(abs(tab.row(n).A - limit_values(n, Real(0.5), LimitWhich::A, ctx)) <
                  pow10(-10));
            CHECK(abs(tab.row(n).coeffs[0] - limit_values(n, Real(0.5), LimitWhich::a0, ctx)) <
                  pow10(-10));
        }
    }

    TEST_CASE("evaluation: P_0, the P_1 root, and coefficient-row consistency") {
        auto ctx = PrecisionContext::make(25, 5);
        PrecisionScope scope(ctx.bits);
        RecurrenceTable tab = build_recurrence(Real(-0.5), Real(1), 5, ctx);
        CHECK(rel_diff(tab.eval(0, Real(3.3)), 1 / sqrt(sqrt(pi()) * exp(Real(-2)))) <
              pow10(-20));
        // P_1 vanishes at x = B_0
        CHECK(abs(tab.eval(1, tab.row(0).B)) < pow10(-20));
        SampleGen gen(42);
        for (int rep = 0; rep < 20; ++rep) {
            Real x = gen.uniform_real(0.0, 12.0);
            for (int n = 0; n <= 5; ++n)
                CHECK(rel_diff(tab.eval(n, x), tab.eval_coeffs(n, x)) < pow10(-15));
        }
        CHECK_THROWS_AS(tab.eval(6, Real(1)), std::out_of_range);
    }

    TEST_CASE("determinant representation agrees with the recurrence evaluation") {
        auto ctx = PrecisionContext::make(25, 4);
        PrecisionScope scope(ctx.bits);
        RecurrenceTable tab = build_recurrence(Real(0.5), Real(2), 4, ctx);
        CHECK(rel_diff(determinant_eval(Real(0.5), Real(2), 0, Real(1), ctx), tab.eval(0, Real(1))) <
              pow10(-18));
        for (double x : {0.0, 3.7}) {
            CHECK(rel_diff(determinant_eval(Real(0.5), Real(2), 4, Real(x), ctx),
                           tab.eval(4, Real(x))) < pow10(-15));
        }
        RecurrenceTable tabm = build_recurrence(Real(-0.5), Real(1), 1, ctx);
        CHECK(rel_diff(determinant_eval(Real(-0.5), Real(1), 1, Real(0), ctx),
                       tabm.eval(1, Real(0))) < pow10(-15));
        CHECK_THROWS_AS(determinant_eval(Real(0.5), Real(1), 9, Real(1), ctx), DomainError);
    }

    TEST_CASE("free terms from the product formula match the coefficient rows") {
        auto ctx = PrecisionContext::make(25, 5);
        PrecisionScope scope(ctx.bits);
        RecurrenceTable tab = build_recurrence(Real(-0.5), Real(1), 5, ctx);
        std::vector<Real> ft = free_term_product(tab, ctx);
        for (int n = 0; n <= 5; ++n)
            CHECK(rel_diff(ft[static_cast<size_t>(n)], tab.row(n).coeffs[0]) < pow10(-18));
        // the t -> 0 free terms approach the closed form
        RecurrenceTable lag = build_recurrence(Real(0.5), Real(1e-24), 4, ctx);
        for (int n = 0; n <= 4; ++n)
            CHECK(abs(lag.row(n).coeffs[0] -
                      limit_values(n, Real(0.5), LimitWhich::a0, ctx)) < pow10(-10));
    }

    TEST_CASE("orthonormality through the Gauss rule") {
        auto ctx = PrecisionContext::make(26, 6);
        PrecisionScope scope(ctx.bits);
        RecurrenceTable tab = build_recurrence(Real(0.5), Real(2), 6, ctx);
        QuadratureRule rule = gauss_rule(tab, 7, ctx);
        auto g = gram(tab, rule, 6);
        for (int i = 0; i <= 6; ++i)
            for (int j = 0; j <= 6; ++j)
                CHECK(abs(g[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                          Real(i == j ? 1 : 0)) < pow10(-(ctx.target_digits / 2)));
    }

    TEST_CASE("moment identities: B_n, 1/a_n, -b_{n+1}/(a_{n+1} a_n) and A_n as integrals") {
        auto ctx = PrecisionContext::make(22, 3);
        PrecisionScope scope(ctx.bits);
        Real nu(0.5), t(1.5);
        RecurrenceTable tab = build_recurrence(nu, t, 3, ctx);
        const Real tol = pow10(-(ctx.target_digits / 2));
        for (int n = 1; n <= 2; ++n) {
            Real i19 = weighted_integral(nu, t, Real(1), [&](const Real& x) {
                Real p = tab.eval(n, x);
                return p * p;
            }, ctx);
            CHECK(abs(i19 - tab.row(n).B) < tol * (1 + abs(i19)));
            Real i20 = weighted_integral(nu, t, Real(n), [&](const Real& x) {
                return tab.eval(n, x);
            }, ctx);
            CHECK(abs(i20 - 1 / tab.row(n).a) < tol * (1 + abs(i20)));
            Real i21 = weighted_integral(nu, t, Real(n + 1), [&](const Real& x) {
                return tab.eval(n, x);
            }, ctx);
            Real rhs21 = -tab.row(n + 1).b / (tab.row(n + 1).a * tab.row(n).a);
            CHECK(abs(i21 - rhs21) < tol * (1 + abs(i21)));
            Real i22 = weighted_integral(nu, t, Real(1), [&](const Real& x) {
                auto p = tab.eval_all(n, x);
                return p[static_cast<size_t>(n)] * p[static_cast<size_t>(n) - 1];
            }, ctx);
            CHECK(abs(i22 - tab.row(n).A) < tol * (1 + abs(i22)));
        }
    }

    TEST_CASE("Christoffel-Darboux at random point pairs") {
        auto ctx = PrecisionContext::make(24, 5);
        PrecisionScope scope(ctx.bits);
        RecurrenceTable tab = build_recurrence(Real(-0.5), Real(2), 5, ctx);
        SampleGen gen(11);
        for (int rep = 0; rep < 10; ++rep) {
            Real x = gen.uniform_real(0.1, 9.0);
            Real y = gen.uniform_real(0.1, 9.0);
            if (x == y) continue;
            for (int n = 0; n <= 4; ++n) {
                auto px = tab.eval_all(n + 1, x);
                auto py = tab.eval_all(n + 1, y);
                Real lhs(0);
                for (int k = 0; k <= n; ++k)
                    lhs += px[static_cast<size_t>(k)] * py[static_cast<size_t>(k)];
                Real rhs = tab.row(n + 1).A *
                           (px[static_cast<size_t>(n) + 1] * py[static_cast<size_t>(n)] -
                            px[static_cast<size_t>(n)] * py[static_cast<size_t>(n) + 1]) /
                           (x - y);
                CHECK(rel_diff(lhs, rhs) < pow10(-(ctx.target_digits / 2)));
            }
        }
    }

    TEST_CASE("out-of-domain requests are rejected") {
        auto ctx = PrecisionContext::make(15);
        CHECK_THROWS_AS(build_recurrence(Real(0.5), Real(-1), 2, ctx), DomainError);
        CHECK_THROWS_AS(build_recurrence(Real(0.5), Real(1), 30, ctx), DomainError);
    }
}
