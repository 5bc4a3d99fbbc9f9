#ifndef OPOLY_EXPANSION_HPP
#define OPOLY_EXPANSION_HPP

#include <utility>
#include <vector>

#include "opoly/quadrature.hpp"
#include "opoly/report.hpp"

namespace opoly {

// Laguerre-expansion coefficients of e^{-t/x} P_n(x,t):
//   d_{n,k} = (k!/Gamma(k+nu+1)) int_0^inf e^{-x-t/x} P_n(x,t) L_k^nu(x) x^nu dx,
// zero for k < n by orthogonality. Requires nu > -1.
struct ExpansionCoeffs {
    Real nu;
    Real t;
    int n = 0;
    int k_max = 0;
    std::vector<Real> d;  // d[k], k = 0..k_max
    Real h_bound;         // envelope constant of the coefficient bound
};

// All coefficients k = 0..k_max in one shared-node quadrature pass.
ExpansionCoeffs d_coeffs(const RecurrenceTable& table, int n, int k_max,
                         const PrecisionContext& ctx);
Real d_coeff(const RecurrenceTable& table, int n, int k, const PrecisionContext& ctx);

// h_n(t) = 2^{nu-1/2} int_0^t Q_n(t-y) rho_{2nu+1}^{1/2}(2y) y^{-1/2} dy with
// Q_n(x) = sum_m |a_{n,m}| x^m/m!, integrated after the square-root endpoint
// substitution y = u^2. Bounds every |d_{n,k}| by k! h_n / Gamma(k+nu+1).
Real lemma2_bound(const RecurrenceTable& table, int n, const PrecisionContext& ctx);

// Coefficient recurrences in (n, k) plus the zero block and the envelope
// bound; rows carry ids 4.3, 4.11 and 4.12.
ResidualReport expansion_checks(const RecurrenceTable& table, int n_hi, int k_hi,
                                const PrecisionContext& ctx);

// Truncation error of the Laguerre series for e^{-t/x} P_n over the sample
// points, reported at K and 2K to exhibit decay. Requires nu > 3/2 (the
// series' uniform-convergence range).
ResidualReport rodrigues_truncation(const RecurrenceTable& table, int n, int K,
                                    const std::vector<Real>& x_samples,
                                    const PrecisionContext& ctx);

// Partial sum sum_{n<=N} P_n(x,t) w^n/n! and the exact L2 tail bound
// sum_{n>N} |w|^n/n!.
std::pair<Real, Real> generating_partial(const RecurrenceTable& table, const Real& x,
                                         const Real& w, int N, const PrecisionContext& ctx);

}  // namespace opoly

#endif
