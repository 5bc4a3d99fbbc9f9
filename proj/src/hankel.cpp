#include "opoly/hankel.hpp"

#include <algorithm>
#include <string>

#include "opoly/detail/linalg.hpp"

namespace opoly {

namespace {

// G^{nu+shift}_n from a moment table holding rho_{nu+k}.
Real G_from(const MomentTable& mom, int n, int shift = 0) {
    if (n < 0) return Real(1);
    detail::Matrix m(n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) m.at(i, j) = mom.at(1 + shift + i + j);
    return detail::det_bareiss(std::move(m));
}

Real G_minor_from(const MomentTable& mom, int n, int k) {
    detail::Matrix m(n);
    for (int i = 0; i < n; ++i) {
        int col = 0;
        for (int o = 0; o <= n; ++o) {
            if (o == k - 1) continue;
            m.at(i, col++) = mom.at(1 + i + o);
        }
    }
    return detail::det_bareiss(std::move(m));
}

Real H_from(const MomentTable& mom, int i, int j, int n) {
    if (i > j) return -H_from(mom, j, i, n);  // same elimination transcript, sign flip
    detail::Matrix m(n + 1);
    for (int r = 0; r <= n; ++r) {
        m.at(r, 0) = mom.at(i + r);
        m.at(r, 1) = mom.at(j + r);
        for (int c = 2; c <= n; ++c) m.at(r, c) = Real(r) * mom.at(r + c);
    }
    return detail::det_bareiss(std::move(m));
}

}  // namespace

HankelValue hankel_G(const Real& nu, const Real& t, int n, const PrecisionContext& ctx) {
    if (n < -1) throw DomainError("hankel_G: n must be >= -1");
    HankelValue out;
    out.nu = nu;
    out.t = t;
    out.n = n;
    if (n <= 8) {
        auto [v, bits] = adaptive_retry_real(
            [&](const PrecisionContext& c) {
                PrecisionScope scope(c.bits);
                if (n < 0) return Real(1);
                return G_from(moment_table(nu, t, 1, 2 * n + 1, c), n);
            },
            ctx);
        out.value = v;
        out.achieved_bits = bits;
    } else {
        // G_n = prod_k r_kk^2 = prod_k a_k^{-2} from the Cholesky pipeline
        RecurrenceTable tab = build_recurrence(nu, t, n, ctx);
        PrecisionScope scope(tab.achieved_bits);
        Real g(1);
        for (int k = 0; k <= n; ++k) g /= tab.row(k).a * tab.row(k).a;
        out.value = g;
        out.achieved_bits = tab.achieved_bits;
    }
    return out;
}

Real hankel_G_minor(const Real& nu, const Real& t, int n, int k, const PrecisionContext& ctx) {
    if (n < 1 || k < 1 || k > n) throw DomainError("hankel_G_minor: need n >= 1, 1 <= k <= n");
    return adaptive_retry_real(
               [&](const PrecisionContext& c) {
                   PrecisionScope scope(c.bits);
                   return G_minor_from(moment_table(nu, t, 1, 2 * n + 1, c), n, k);
               },
               ctx)
        .first;
}

HPair hankel_H(int i, int j, const Real& nu, const Real& t, int n, const PrecisionContext& ctx) {
    if (n < 1 || n > 6) throw DomainError("hankel_H: n must be in [1, 6]");
    if (std::abs(i) > n + 5 || std::abs(j) > n + 5)
        throw DomainError("hankel_H: offsets out of the supported window");
    HPair out;
    out.i = i;
    out.j = j;
    out.nu = nu;
    out.t = t;
    out.n = n;
    int k_lo = std::min({i, j, 2});
    int k_hi = std::max({n + i, n + j, 2 * n});
    out.value = adaptive_retry_real(
                    [&](const PrecisionContext& c) {
                        PrecisionScope scope(c.bits);
                        return H_from(moment_table(nu, t, k_lo, k_hi, c), i, j, n);
                    },
                    ctx)
                    .first;
    return out;
}

ResidualReport check_det_formulas(const RecurrenceTable& table, const PrecisionContext& ctx) {
    const Real& nu = table.nu;
    const Real& t = table.t;
    const int N = std::min(table.n_max - 1, 6);
    if (N < 1) throw DomainError("check_det_formulas: table too small");
    PrecisionScope scope(ctx.bits);
    ReportBuilder rb(nu, t);
    const Real tol_alg = tolerance_for(Method::algebraic, ctx);
    const Real h = t * ctx.fd_step_scale;
    const Real tol_fd = tolerance_for(Method::finite_difference, ctx, h);

    MomentTable mom = moment_table(nu, t, -1, 2 * N + 4, ctx);
    MomentTable mom_p = moment_table(nu, t + h, -1, 2 * N + 4, ctx);
    MomentTable mom_m = moment_table(nu, t - h, -1, 2 * N + 4, ctx);
    RecurrenceTable table1 = build_recurrence(nu + 1, t, N + 1, ctx);

    std::vector<Real> G(static_cast<size_t>(N) + 3);  // G[m+1] = G_m, m = -1..N+1
    std::vector<Real> Gp(G.size()), Gm(G.size());
    for (int m = -1; m <= N + 1; ++m) {
        G[static_cast<size_t>(m + 1)] = G_from(mom, m);
        Gp[static_cast<size_t>(m + 1)] = G_from(mom_p, m);
        Gm[static_cast<size_t>(m + 1)] = G_from(mom_m, m);
    }
    auto g = [&](int m) -> const Real& { return G[static_cast<size_t>(m + 1)]; };
    // (ln G_m)' and (ln G_m)'' by central differences
    auto dlng = [&](int m) {
        if (m < 0) return Real(0);
        return (log(Gp[static_cast<size_t>(m + 1)]) - log(Gm[static_cast<size_t>(m + 1)])) /
               (2 * h);
    };
    auto d2lng = [&](int m) {
        return (log(Gp[static_cast<size_t>(m + 1)]) - 2 * log(g(m)) +
                log(Gm[static_cast<size_t>(m + 1)])) /
               (h * h);
    };

    for (int n = 0; n <= N; ++n) {
        const auto& r = table.row(n);
        Real ba = r.b / r.a;                       // b_n/a_n
        Real ba1 = table.row(n + 1).b / table.row(n + 1).a;
        const Real& A1 = table.row(n + 1).A;

        if (n >= 1) {
            // free coefficient via the column-deleted minor
            Real rhs = G_minor_from(mom, n, 1) / sqrt(g(n - 1) * g(n));
            rb.add_scaled("3.22", n, r.coeffs[0], rhs, abs(r.coeffs[0]) + abs(rhs), tol_alg,
                          Method::algebraic);
        }
        {
            Real rhs = sqrt(g(n - 1) / g(n));
            rb.add_scaled("3.23", n, abs(r.a), rhs, abs(r.a) + rhs, tol_alg,
                          Method::algebraic);
        }
        {
            Real lhs = G_from(mom, n - 1, 1) / g(n);
            Real rhs = (n % 2 == 0 ? Real(1) : Real(-1)) * r.a * r.coeffs[0];
            rb.add_scaled("3.24", n, lhs, rhs, abs(lhs) + abs(rhs), tol_alg,
                          Method::algebraic);
        }
        {
            // both printed forms of the nu-shift square
            Real a1sq = table1.row(n).a * table1.row(n).a;
            Real denom = 2 * n + nu + 3 - table.row(n + 1).B;
            Real rhs = (r.a * r.a + table.row(n + 1).a * table.row(n + 1).b) / denom;
            rb.add_scaled("3.25", n, a1sq, rhs, abs(a1sq) + abs(rhs), tol_alg,
                          Method::algebraic);
            Real lhs2 = -A1 * r.coeffs[0] / table.row(n + 1).coeffs[0];
            Real rhs2 = (A1 * A1 + ba1) / denom;
            rb.add_scaled("3.25", n, lhs2, rhs2, abs(lhs2) + abs(rhs2), tol_alg,
                          Method::algebraic);
        }
        {
            Real prod1(1), prod0(1);
            for (int k = 0; k <= n; ++k) {
                prod1 *= table1.row(k).a * table1.row(k).a;
                prod0 *= table.row(k).a * table.row(k).a;
            }
            Real rhs = (n % 2 == 0 ? Real(-1) : Real(1)) * table.row(n + 1).a /
                       table.row(n + 1).coeffs[0] * prod0;
            rb.add_scaled("3.26", n, prod1, rhs, abs(prod1) + abs(rhs), tol_alg,
                          Method::algebraic);
        }
        {
            // Laplace expansion of G_n against the coefficient row
            Real s(0), sc(0);
            for (int k = 0; k <= n; ++k) {
                Real term = mom.at(n + k + 1) * r.coeffs[static_cast<size_t>(k)];
                s += term;
                sc = max(sc, abs(term));
            }
            Real rhs = 1 / r.a;
            rb.add_scaled("3.27", n, s, rhs, sc + abs(rhs), tol_alg, Method::algebraic);
        }
        {
            Real rhs = 2 * n + nu + 1 + t * (dlng(n - 1) - dlng(n));
            rb.add_scaled("3.28", n, r.B, rhs, abs(r.B) + abs(rhs), tol_fd,
                          Method::finite_difference);
        }
        if (n >= 1) {
            Real rhs = sqrt(g(n - 1) * g(n + 1)) / g(n);
            rb.add_scaled("3.29", n, abs(A1), rhs, abs(A1) + rhs, tol_alg,
                          Method::algebraic);
        }
        {
            Real lhs = dlng(n) * t;  // t G'_n/G_n
            Real rhs = ba1 + Real(n + 1) * (n + nu + 1);
            rb.add_scaled("3.31", n, lhs, rhs, abs(lhs) + abs(rhs), tol_fd,
                          Method::finite_difference);
        }
        {
            Real lhs = t * t * d2lng(n);
            Real rhs = A1 * A1 - Real(n + 1) * (n + 1 + nu);
            rb.add_scaled("3.32", n, lhs, rhs, abs(lhs) + abs(rhs), tol_fd,
                          Method::finite_difference);
        }
    }

    // H-family identities
    for (int n = 1; n <= N; ++n) {
        for (int j = 1; j <= n; ++j) {
            Real diag = H_from(mom, j, j, n);
            rb.add_scaled("3.36", n, diag, Real(0), max(Real(1), abs(g(n))), tol_alg,
                          Method::algebraic);
            Real lhs = H_from(mom, j, j + 1, n);
            Real rhs = (j % 2 == 0 ? Real(-1) : Real(1)) * pow(t, j - 1) * g(n);
            rb.add_scaled("3.36", n, lhs, rhs, abs(lhs) + abs(rhs), tol_alg,
                          Method::algebraic);
        }
        for (int i = 3; i <= n + 1; ++i) {
            for (int j = 3; j <= n + 1; ++j) {
                Real t1 = (nu + i - 1) * H_from(mom, i - 1, j, n);
                Real t2 = (nu + j - 1) * H_from(mom, j - 1, i, n);
                Real t3 = t * (H_from(mom, i - 2, j, n) + H_from(mom, j - 2, i, n));
                Real sc = abs(t1) + abs(t2) + abs(t3);
                rb.add_scaled("3.40", n, t1 + t2 + t3, Real(0), sc, tol_alg, Method::algebraic);
            }
        }
        {
            Real lhs = H_from(mom, n + 2, n + 1, n);
            Real rhs = (n % 2 == 0 ? Real(-1) : Real(1)) *
                       (pow(t, n) * g(n) - factorial(n) * mom.at(n + 1) * G_from(mom, n - 1, 2));
            rb.add_scaled("3.41", n, lhs, rhs, abs(lhs) + abs(rhs), tol_alg,
                          Method::algebraic);
        }
        {
            Real dG = (Gp[static_cast<size_t>(n + 1)] - Gm[static_cast<size_t>(n + 1)]) / (2 * h);
            Real dH01 = (H_from(mom_p, 0, 1, n) - H_from(mom_m, 0, 1, n)) / (2 * h);
            Real t1 = t * dG - (nu + 1) * g(n) + factorial(n) * mom.at(2) * G_from(mom, n - 1, 1);
            Real t2 = t * t * (dH01 + H_from(mom, -1, 1, n));
            Real sc = abs(t * dG) + abs((nu + 1) * g(n)) + abs(t * t * dH01) +
                      abs(t * t * H_from(mom, -1, 1, n));
            rb.add_scaled("3.43", n, t1 + t2, Real(0), sc, tol_fd, Method::finite_difference);
        }
    }
    return rb.take();
}

}  // namespace opoly
