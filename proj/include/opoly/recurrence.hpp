#ifndef OPOLY_RECURRENCE_HPP
#define OPOLY_RECURRENCE_HPP

#include <vector>

#include "opoly/rho.hpp"

namespace opoly {

// Per-degree recurrence data for the orthonormal family P_n(x,t):
//   x P_n = A_{n+1} P_{n+1} + B_n P_n + A_n P_{n-1}
// with the sign convention sign(a_n) = (-1)^n fixed by the Laguerre limit,
// hence A_n < 0 for n >= 1. Boundary conventions: A_0 = 0, b_0 = 0.
struct RecurrenceRow {
    Real a;                   // leading coefficient, coeffs[n]
    Real b;                   // coefficient of x^{n-1}, coeffs[n-1]; 0 for n = 0
    Real A;                   // off-diagonal; a_{n-1}/a_n
    Real B;                   // diagonal; b_n/a_n - b_{n+1}/a_{n+1}
    std::vector<Real> coeffs; // a_{n,0..n}
};

struct RecurrenceTable {
    Real nu;
    Real t;
    int n_max = 0;
    long achieved_bits = 0;
    std::vector<RecurrenceRow> rows;

    const RecurrenceRow& row(int n) const;

    // P_n(x,t) by the forward three-term recurrence from P_0 = a_{0,0}.
    Real eval(int n, const Real& x) const;
    // P_0..P_n at x in one recurrence pass.
    std::vector<Real> eval_all(int n, const Real& x) const;
    // Same polynomial from its coefficient row (Horner); order-th x-derivative.
    Real eval_coeffs(int n, const Real& x, int deriv_order = 0) const;

    // Total mass of the measure, rho_{nu+1}(t) = 1/a_{0,0}^2.
    Real mu0() const;
};

// Moments -> positive-definite Hankel matrix -> Cholesky under adaptive
// precision -> Jacobi data; coefficient rows by the inverted recurrence
// A_{n+1} a_{n+1,k} = a_{n,k-1} - B_n a_{n,k} - A_n a_{n-1,k}.
RecurrenceTable build_recurrence(const Real& nu, const Real& t, int n_max,
                                 const PrecisionContext& ctx);

// Single-precision-level build (no doubling retries) for bulk grid work where
// an outer refinement loop already cross-validates the results.
RecurrenceTable build_recurrence_fixed(const Real& nu, const Real& t, int n_max,
                                       const PrecisionContext& ctx);

// P_n(x,t) from the bordered Hankel determinant divided by sqrt(G_{n-1} G_n),
// sign fixed to the table convention. Oracle path, n <= 8.
Real determinant_eval(const Real& nu, const Real& t, int n, const Real& x,
                      const PrecisionContext& ctx);

// Free terms a_{n,0} recomputed through the product formula
//   a_{n,0} = [a_n rho_{nu+1}]^-1 prod_{k<=n} (B_k-nu-1-2k)/(A_k^2+b_k/a_k)
// for comparison against coeffs[n][0].
std::vector<Real> free_term_product(const RecurrenceTable& table, const PrecisionContext& ctx);

}  // namespace opoly

#endif
