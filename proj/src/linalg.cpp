#include "opoly/detail/linalg.hpp"

#include <algorithm>

namespace opoly::detail {

Real det_bareiss(Matrix m) {
    const int n = m.n;
    if (n == 0) return Real(1);
    int sign = 1;
    Real prev_pivot(1);
    for (int k = 0; k + 1 < n; ++k) {
        int piv = k;
        Real best = abs(m.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            Real v = abs(m.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best.is_zero()) return Real(0);
        if (piv != k) {
            for (int j = k; j < n; ++j) mpfr_swap(m.at(k, j).raw(), m.at(piv, j).raw());
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / prev_pivot;
            m.at(i, k) = Real(0);
        }
        prev_pivot = m.at(k, k);
    }
    Real d = m.at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

Real det_cofactor(const Matrix& m) {
    const int n = m.n;
    if (n == 0) return Real(1);
    if (n == 1) return m.at(0, 0);
    Real d(0);
    for (int j = 0; j < n; ++j) {
        Matrix sub(n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = m.at(i, c);
            }
        }
        Real term = m.at(0, j) * det_cofactor(sub);
        d = (j % 2 == 0) ? d + term : d - term;
    }
    return d;
}

}  // namespace opoly::detail

#include "opoly/detail/gauss_legendre.hpp"

#include <cmath>

namespace opoly::detail {

GLRule gauss_legendre(int p) {
    GLRule rule;
    rule.nodes.reserve(static_cast<size_t>(p));
    rule.weights.reserve(static_cast<size_t>(p));
    auto legendre = [&](const Real& x) {  // P_p and P_p'
        Real pm(1), pc = x;
        for (int k = 1; k < p; ++k) {
            Real pn = ((2 * k + 1) * x * pc - Real(k) * pm) / (k + 1);
            pm = pc;
            pc = pn;
        }
        Real dp = Real(p) * (x * pc - pm) / (x * x - 1);
        return std::pair<Real, Real>(pc, dp);
    };
    int iters = 8;
    for (mpfr_prec_t b = 64; b < Real::working_precision(); b *= 2) ++iters;
    for (int i = 0; i < p; ++i) {
        Real x(std::cos(M_PI * (i + 0.75) / (p + 0.5)));
        for (int it = 0; it < iters; ++it) {
            auto [v, dv] = legendre(x);
            x -= v / dv;
        }
        auto [v, dv] = legendre(x);
        rule.nodes.push_back(x);
        rule.weights.push_back(2 / ((1 - x * x) * dv * dv));
    }
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

}  // namespace opoly::detail
