#include "opoly/quadrature.hpp"

#include <string>

namespace opoly {

namespace {

// Number of eigenvalues of the Jacobi matrix strictly below x.
int sturm_count(const std::vector<Real>& diag, const std::vector<Real>& off2, const Real& x,
                const Real& tiny) {
    int count = 0;
    Real d = diag[0] - x;
    if (abs(d) < tiny) d = -tiny;
    if (d < 0) ++count;
    for (size_t i = 1; i < diag.size(); ++i) {
        d = (diag[i] - x) - off2[i] / d;
        if (abs(d) < tiny) d = -tiny;
        if (d < 0) ++count;
    }
    return count;
}

}  // namespace

QuadratureRule gauss_rule(const RecurrenceTable& table, int m, const PrecisionContext& ctx) {
    if (m < 1 || m > table.n_max + 1)
        throw DomainError("gauss_rule: need 1 <= m <= n_max + 1");
    PrecisionScope scope(ctx.bits);

    std::vector<Real> diag(static_cast<size_t>(m)), off(static_cast<size_t>(m)),
        off2(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) diag[static_cast<size_t>(i)] = table.row(i).B;
    off[0] = Real(0);
    off2[0] = Real(0);
    for (int i = 1; i < m; ++i) {
        off[static_cast<size_t>(i)] = abs(table.row(i).A);
        off2[static_cast<size_t>(i)] = off[static_cast<size_t>(i)] * off[static_cast<size_t>(i)];
    }

    // Gershgorin bounds
    Real lo = diag[0], hi = diag[0];
    for (int i = 0; i < m; ++i) {
        Real radius = off[static_cast<size_t>(i)];
        if (i + 1 < m) radius += off[static_cast<size_t>(i) + 1];
        lo = min(lo, diag[static_cast<size_t>(i)] - radius);
        hi = max(hi, diag[static_cast<size_t>(i)] + radius);
    }
    Real pad = max(Real(1), hi - lo) * pow10(-ctx.target_digits);
    lo -= pad;
    hi += pad;
    const Real tiny = pow10(-2 * ctx.target_digits) * max(Real(1), abs(hi));
    if (sturm_count(diag, off2, lo, tiny) != 0 || sturm_count(diag, off2, hi, tiny) != m)
        throw EigenFailure("gauss_rule: inconsistent Sturm counts at the spectrum bounds");

    QuadratureRule rule;
    rule.nu = table.nu;
    rule.t = table.t;
    rule.m = m;
    const Real mu0 = table.mu0();
    const Real width_tol = (hi - lo) * pow10(-(ctx.target_digits + 10));

    for (int k = 0; k < m; ++k) {
        Real a = lo, b = hi;
        while (b - a > width_tol) {
            Real mid = (a + b) / 2;
            if (sturm_count(diag, off2, mid, tiny) > k)
                b = mid;
            else
                a = mid;
        }
        Real lambda = (a + b) / 2;

        // inverse iteration started from the orthonormal-polynomial vector,
        // which is the exact eigenvector in exact arithmetic
        std::vector<Real> v = table.eval_all(m - 1, lambda);
        for (int iter = 0; iter < 2; ++iter) {
            // solve (J - lambda I) w = v by tridiagonal LU with row swaps
            std::vector<Real> dl(static_cast<size_t>(m)), dd(static_cast<size_t>(m)),
                du(static_cast<size_t>(m)), du2(static_cast<size_t>(m)), w = v;
            for (int i = 0; i < m; ++i) {
                dd[static_cast<size_t>(i)] = diag[static_cast<size_t>(i)] - lambda;
                du[static_cast<size_t>(i)] = (i + 1 < m) ? off[static_cast<size_t>(i) + 1] : Real(0);
                dl[static_cast<size_t>(i)] = (i + 1 < m) ? off[static_cast<size_t>(i) + 1] : Real(0);
                du2[static_cast<size_t>(i)] = Real(0);
            }
            for (int i = 0; i + 1 < m; ++i) {
                if (abs(dl[static_cast<size_t>(i)]) > abs(dd[static_cast<size_t>(i)])) {
                    mpfr_swap(dd[static_cast<size_t>(i)].raw(), dl[static_cast<size_t>(i)].raw());
                    mpfr_swap(du[static_cast<size_t>(i)].raw(),
                              dd[static_cast<size_t>(i) + 1].raw());
                    if (i + 2 < m)
                        mpfr_swap(du2[static_cast<size_t>(i)].raw(),
                                  du[static_cast<size_t>(i) + 1].raw());
                    mpfr_swap(w[static_cast<size_t>(i)].raw(), w[static_cast<size_t>(i) + 1].raw());
                }
                if (abs(dd[static_cast<size_t>(i)]) < tiny)
                    dd[static_cast<size_t>(i)] = tiny;
                Real f = dl[static_cast<size_t>(i)] / dd[static_cast<size_t>(i)];
                dd[static_cast<size_t>(i) + 1] -= f * du[static_cast<size_t>(i)];
                if (i + 2 < m) du[static_cast<size_t>(i) + 1] -= f * du2[static_cast<size_t>(i)];
                w[static_cast<size_t>(i) + 1] -= f * w[static_cast<size_t>(i)];
            }
            if (abs(dd[static_cast<size_t>(m) - 1]) < tiny) dd[static_cast<size_t>(m) - 1] = tiny;
            for (int i = m - 1; i >= 0; --i) {
                Real s = w[static_cast<size_t>(i)];
                if (i + 1 < m) s -= du[static_cast<size_t>(i)] * w[static_cast<size_t>(i) + 1];
                if (i + 2 < m) s -= du2[static_cast<size_t>(i)] * w[static_cast<size_t>(i) + 2];
                w[static_cast<size_t>(i)] = s / dd[static_cast<size_t>(i)];
            }
            Real norm(0);
            for (const Real& c : w) norm += c * c;
            norm = sqrt(norm);
            for (Real& c : w) c /= norm;
            v = std::move(w);
        }
        Real w0 = v[0];
        rule.nodes.push_back(lambda);
        rule.weights.push_back(mu0 * w0 * w0);
    }

    for (int k = 0; k < m; ++k) {
        if (!(rule.nodes[static_cast<size_t>(k)] > 0) ||
            (k > 0 && !(rule.nodes[static_cast<size_t>(k)] > rule.nodes[static_cast<size_t>(k) - 1])) ||
            !(rule.weights[static_cast<size_t>(k)] > 0))
            throw EigenFailure("gauss_rule: node/weight invariants violated (precision signal)");
    }
    return rule;
}

Real integrate(const QuadratureRule& rule, const std::function<Real(const Real&)>& f) {
    Real s(0);
    for (int i = 0; i < rule.m; ++i) {
        Real v = f(rule.nodes[static_cast<size_t>(i)]);
        if (!v.is_finite()) throw DomainError("integrate: non-finite integrand at a node");
        s += rule.weights[static_cast<size_t>(i)] * v;
    }
    return s;
}

Real integrate_nonpolynomial(const QuadratureRule& rule, const std::function<Real(const Real&)>& f,
                             int degree_hint) {
    if (rule.m < 2 * degree_hint)
        throw DomainError("integrate_nonpolynomial: rule too small for a non-polynomial integrand");
    return integrate(rule, f);
}

std::vector<std::vector<Real>> gram(const RecurrenceTable& table, const QuadratureRule& rule,
                                    int n_max) {
    if (rule.m < n_max + 1) throw DomainError("gram: need rule.m >= n_max + 1");
    std::vector<std::vector<Real>> g(static_cast<size_t>(n_max) + 1,
                                     std::vector<Real>(static_cast<size_t>(n_max) + 1, Real(0)));
    for (int q = 0; q < rule.m; ++q) {
        std::vector<Real> p = table.eval_all(n_max, rule.nodes[static_cast<size_t>(q)]);
        const Real& w = rule.weights[static_cast<size_t>(q)];
        for (int i = 0; i <= n_max; ++i)
            for (int j = i; j <= n_max; ++j)
                g[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                    w * p[static_cast<size_t>(i)] * p[static_cast<size_t>(j)];
    }
    for (int i = 0; i <= n_max; ++i)
        for (int j = 0; j < i; ++j)
            g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                g[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return g;
}

}  // namespace opoly
