#ifndef OPOLY_HANKEL_HPP
#define OPOLY_HANKEL_HPP

#include "opoly/recurrence.hpp"
#include "opoly/report.hpp"

namespace opoly {

// G_n^nu(t): determinant of the (n+1)-square Hankel matrix of moments
// rho_{nu+1+i+j}(t). Positive for every n; G_{-1} := 1 so boundary formulas
// stay evaluable at n = 0.
struct HankelValue {
    Real nu;
    Real t;
    int n = 0;
    Real value;
    long achieved_bits = 0;
};

// Determinant path for n <= 8 (fraction-free elimination under adaptive
// precision); larger n via the Cholesky product of the recurrence pipeline.
HankelValue hankel_G(const Real& nu, const Real& t, int n, const PrecisionContext& ctx);

// Column-deleted minor G_{n,k}: rows i = 0..n-1, moment offsets {0..n}\{k-1}
// relative to rho_{nu+1}; 1 <= k <= n.
Real hankel_G_minor(const Real& nu, const Real& t, int n, int k, const PrecisionContext& ctx);

// Double determinant family H_{i,j}^{nu,n}: first two columns rho_{nu+i+r},
// rho_{nu+j+r}; remaining columns r * rho_{nu+r+c}, c = 2..n. Antisymmetric in
// (i,j) by construction: i > j is evaluated as the negated (j,i) transcript.
struct HPair {
    int i = 0;
    int j = 0;
    Real nu;
    int n = 0;
    Real t;
    Real value;
};

HPair hankel_H(int i, int j, const Real& nu, const Real& t, int n, const PrecisionContext& ctx);

// Determinant-level identities tying G, its minors and H to the recurrence
// data (free terms, leading terms, off-diagonals, log-derivative relations and
// the H recurrences). Emits one report row per identity and degree; never
// aborts on a failing member.
ResidualReport check_det_formulas(const RecurrenceTable& table, const PrecisionContext& ctx);

}  // namespace opoly

#endif
