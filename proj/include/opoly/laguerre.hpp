#ifndef OPOLY_LAGUERRE_HPP
#define OPOLY_LAGUERRE_HPP

#include "opoly/numerics.hpp"

namespace opoly {

// Gamma function for positive argument, by quadrature of the Euler integral
// under the same exp-substituted trapezoid scheme as everything else.
Real gamma_positive(const Real& z, const PrecisionContext& ctx);

// L_n^nu(x) by upward recurrence from L_0 = 1, L_1 = 1 + nu - x.
Real laguerre_eval(int n, const Real& nu, const Real& x, const PrecisionContext& ctx);

// (n! / Gamma(n+nu+1))^{1/2} L_n^nu(x); requires nu > -1.
Real normalized_laguerre(int n, const Real& nu, const Real& x, const PrecisionContext& ctx);

// Closed-form t = 0 values of the recurrence data and their t-derivatives.
// The value set needs nu > -1, the derivative set nu > 0.
enum class LimitWhich { a, b, A, B, a0, a_prime, b_prime, A_prime, B_prime, a0_prime };

Real limit_values(int n, const Real& nu, LimitWhich which, const PrecisionContext& ctx);

}  // namespace opoly

#endif
