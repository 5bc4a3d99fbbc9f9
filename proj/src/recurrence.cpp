#include "opoly/recurrence.hpp"

#include <algorithm>
#include <string>

#include "opoly/detail/linalg.hpp"

namespace opoly {

const RecurrenceRow& RecurrenceTable::row(int n) const {
    if (n < 0 || n > n_max) throw std::out_of_range("RecurrenceTable: degree out of range");
    return rows[static_cast<size_t>(n)];
}

Real RecurrenceTable::eval(int n, const Real& x) const {
    if (n < 0 || n > n_max) throw std::out_of_range("RecurrenceTable: degree out of range");
    Real pm(0);
    Real pc = rows[0].coeffs[0];
    for (int k = 0; k < n; ++k) {
        Real pn = ((x - rows[static_cast<size_t>(k)].B) * pc -
                   rows[static_cast<size_t>(k)].A * pm) /
                  rows[static_cast<size_t>(k) + 1].A;
        pm = pc;
        pc = pn;
    }
    return pc;
}

std::vector<Real> RecurrenceTable::eval_all(int n, const Real& x) const {
    if (n < 0 || n > n_max) throw std::out_of_range("RecurrenceTable: degree out of range");
    std::vector<Real> p;
    p.reserve(static_cast<size_t>(n) + 1);
    p.push_back(rows[0].coeffs[0]);
    for (int k = 0; k < n; ++k) {
        Real prev = k > 0 ? p[static_cast<size_t>(k) - 1] : Real(0);
        p.push_back(((x - rows[static_cast<size_t>(k)].B) * p.back() -
                     rows[static_cast<size_t>(k)].A * prev) /
                    rows[static_cast<size_t>(k) + 1].A);
    }
    return p;
}

Real RecurrenceTable::eval_coeffs(int n, const Real& x, int deriv_order) const {
    const auto& c = row(n).coeffs;
    Real acc(0);
    for (int k = n; k >= deriv_order; --k) {
        Real term = c[static_cast<size_t>(k)];
        for (int d = 0; d < deriv_order; ++d) term *= (k - d);
        acc = acc * x + term;
    }
    return acc;
}

Real RecurrenceTable::mu0() const { return 1 / (rows[0].coeffs[0] * rows[0].coeffs[0]); }

namespace {

RecurrenceTable build_raw(const Real& nu, const Real& t, int n_max, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.bits);
    MomentTable mom = moment_table(nu, t, 1, 2 * n_max + 2, ctx);
    auto mu = [&](int j) -> const Real& { return mom.at(j + 1); };  // mu_j = rho_{nu+j+1}

    // Partial Cholesky of the moment Hankel matrix: rows 0..n_max, columns
    // 0..n_max+1 (the full square's last diagonal entry is never needed).
    const int rows_n = n_max + 1, cols_n = n_max + 2;
    std::vector<std::vector<Real>> r(static_cast<size_t>(rows_n),
                                     std::vector<Real>(static_cast<size_t>(cols_n), Real(0)));
    for (int i = 0; i < rows_n; ++i) {
        Real diag = mu(2 * i);
        for (int k = 0; k < i; ++k)
            diag -= r[static_cast<size_t>(k)][static_cast<size_t>(i)] *
                    r[static_cast<size_t>(k)][static_cast<size_t>(i)];
        if (!(diag > 0))
            throw NotPositiveDefinite("build_recurrence: nonpositive pivot at row " +
                                      std::to_string(i));
        r[static_cast<size_t>(i)][static_cast<size_t>(i)] = sqrt(diag);
        for (int j = i + 1; j < cols_n; ++j) {
            Real v = mu(i + j);
            for (int k = 0; k < i; ++k)
                v -= r[static_cast<size_t>(k)][static_cast<size_t>(i)] *
                     r[static_cast<size_t>(k)][static_cast<size_t>(j)];
            r[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                v / r[static_cast<size_t>(i)][static_cast<size_t>(i)];
        }
    }

    RecurrenceTable tab;
    tab.nu = nu;
    tab.t = t;
    tab.n_max = n_max;
    tab.achieved_bits = ctx.bits;
    tab.rows.resize(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        auto& row = tab.rows[static_cast<size_t>(n)];
        const Real& rnn = r[static_cast<size_t>(n)][static_cast<size_t>(n)];
        row.B = r[static_cast<size_t>(n)][static_cast<size_t>(n) + 1] / rnn;
        if (n > 0) {
            const Real& rpp = r[static_cast<size_t>(n) - 1][static_cast<size_t>(n) - 1];
            row.B -= r[static_cast<size_t>(n) - 1][static_cast<size_t>(n)] / rpp;
            row.A = -(rnn / rpp);  // sign(a_n) = (-1)^n makes A_n negative
        } else {
            row.A = Real(0);
        }
    }

    // coefficient rows
    tab.rows[0].coeffs = {1 / r[0][0]};
    tab.rows[0].a = tab.rows[0].coeffs[0];
    tab.rows[0].b = Real(0);
    for (int n = 0; n < n_max; ++n) {
        const auto& cn = tab.rows[static_cast<size_t>(n)].coeffs;
        std::vector<Real> next(static_cast<size_t>(n) + 2, Real(0));
        const Real& Bn = tab.rows[static_cast<size_t>(n)].B;
        const Real& An = tab.rows[static_cast<size_t>(n)].A;
        const Real& An1 = tab.rows[static_cast<size_t>(n) + 1].A;
        for (int k = 0; k <= n + 1; ++k) {
            Real v = k > 0 ? cn[static_cast<size_t>(k) - 1] : Real(0);
            if (k <= n) v -= Bn * cn[static_cast<size_t>(k)];
            if (n > 0 && k <= n - 1)
                v -= An * tab.rows[static_cast<size_t>(n) - 1].coeffs[static_cast<size_t>(k)];
            next[static_cast<size_t>(k)] = v / An1;
        }
        auto& rnext = tab.rows[static_cast<size_t>(n) + 1];
        rnext.coeffs = std::move(next);
        rnext.a = rnext.coeffs[static_cast<size_t>(n) + 1];
        rnext.b = rnext.coeffs[static_cast<size_t>(n)];
    }
    return tab;
}

Real table_distance(const RecurrenceTable& x, const RecurrenceTable& y) {
    Real d(0);
    for (int n = 0; n <= x.n_max; ++n) {
        const auto& rx = x.rows[static_cast<size_t>(n)];
        const auto& ry = y.rows[static_cast<size_t>(n)];
        d = max(d, rel_diff(rx.B, ry.B));
        d = max(d, rel_diff(rx.a, ry.a));
        d = max(d, rel_diff(rx.coeffs[0], ry.coeffs[0]));
        if (n > 0) {
            d = max(d, rel_diff(rx.A, ry.A));
            d = max(d, rel_diff(rx.b, ry.b));
        }
    }
    return d;
}

}  // namespace

RecurrenceTable build_recurrence(const Real& nu, const Real& t, int n_max,
                                 const PrecisionContext& ctx) {
    if (!(t > 0)) throw DomainError("build_recurrence: t must be positive");
    if (n_max < 0) throw DomainError("build_recurrence: n_max must be nonnegative");
    if (n_max > 24) throw DomainError("build_recurrence: n_max capped at 24");
    auto [tab, bits] = adaptive_retry<RecurrenceTable>(
        [&](const PrecisionContext& c) { return build_raw(nu, t, n_max, c); }, ctx,
        table_distance);
    tab.achieved_bits = bits;
    return tab;
}

RecurrenceTable build_recurrence_fixed(const Real& nu, const Real& t, int n_max,
                                       const PrecisionContext& ctx) {
    if (!(t > 0)) throw DomainError("build_recurrence_fixed: t must be positive");
    return build_raw(nu, t, n_max, ctx);
}

Real determinant_eval(const Real& nu, const Real& t, int n, const Real& x,
                      const PrecisionContext& ctx) {
    if (n < 0 || n > 8) throw DomainError("determinant_eval: oracle path supports n <= 8");
    auto compute = [&](const PrecisionContext& c) {
        PrecisionScope scope(c.bits);
        MomentTable mom = moment_table(nu, t, 1, std::max(2 * n + 1, 1), c);
        auto hankel = [&](int order) {  // G_order, -1 and up
            if (order < 0) return Real(1);
            detail::Matrix g(order + 1);
            for (int i = 0; i <= order; ++i)
                for (int j = 0; j <= order; ++j) g.at(i, j) = mom.at(1 + i + j);
            return detail::det_bareiss(std::move(g));
        };
        detail::Matrix m(n + 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= n; ++j) m.at(i, j) = mom.at(1 + i + j);
        Real xp(1);
        for (int j = 0; j <= n; ++j) {
            m.at(n, j) = xp;
            xp *= x;
        }
        Real det = detail::det_bareiss(std::move(m));
        Real p = det / sqrt(hankel(n - 1) * hankel(n));
        return (n % 2 == 0) ? p : -p;
    };
    return adaptive_retry_real(compute, ctx).first;
}

std::vector<Real> free_term_product(const RecurrenceTable& table, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.bits);
    const Real tol = pow10(-ctx.target_digits);
    std::vector<Real> out;
    out.reserve(static_cast<size_t>(table.n_max) + 1);
    Real prod(1);
    const Real mu0 = table.mu0();
    out.push_back(table.rows[0].coeffs[0]);  // empty product: a_{0,0} = mu0^{-1/2}
    for (int n = 1; n <= table.n_max; ++n) {
        const auto& r = table.row(n);
        Real denom = r.A * r.A + r.b / r.a;
        Real scale = max(Real(1), max(abs(r.A * r.A), abs(r.b / r.a)));
        if (abs(denom) <= tol * scale)
            throw DegenerateDenominator("free_term_product: A_n^2 + b_n/a_n vanished at n = " +
                                        std::to_string(n));
        prod *= (r.B - table.nu - 1 - 2 * n) / denom;
        out.push_back(prod / (r.a * mu0));
    }
    return out;
}

}  // namespace opoly
