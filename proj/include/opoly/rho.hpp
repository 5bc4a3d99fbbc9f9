#ifndef OPOLY_RHO_HPP
#define OPOLY_RHO_HPP

#include <vector>

#include "opoly/numerics.hpp"

namespace opoly {

// Moment kernel of the weight: rho_nu(t) = int_0^inf e^{-t/x-x} x^{nu-1} dx,
// equal to 2 t^{nu/2} K_nu(2 sqrt(t)). Computed by direct quadrature so the
// artifact needs no Bessel library; the K_nu connection only feeds test
// oracles at half-integer order.
Real rho(const Real& nu, const Real& t, const PrecisionContext& ctx);

// values[k - k_min] = rho_{nu+k}(t) for a contiguous index range. All entries
// share quadrature nodes, but each is a genuine trapezoid sum of its own
// integrand, so the three-term self-check below stays meaningful.
struct MomentTable {
    Real nu;
    Real t;
    int k_min = 0;
    int k_max = 0;
    std::vector<Real> values;

    const Real& at(int k) const { return values.at(static_cast<size_t>(k - k_min)); }
};

// Builds the table and verifies rho_{nu+k+1} = (nu+k) rho_{nu+k} + t rho_{nu+k-1}
// at every interior k to 10^{-(target_digits-5)} relative; a violation means the
// quadrature failed and raises RecurrenceViolation.
MomentTable moment_table(const Real& nu, const Real& t, int k_min, int k_max,
                         const PrecisionContext& ctx);

// d^n/dt^n rho_nu(t) = (-1)^n rho_{nu-n}(t), exactly.
Real rho_derivative(const Real& nu, const Real& t, int n, const PrecisionContext& ctx);
// Independent cross-check of the relation above by central differences (n = 1, 2);
// returns |fd estimate - exact|, which is O(h^2).
Real rho_derivative_fd_residual(const Real& nu, const Real& t, int n, const PrecisionContext& ctx);

// |rho_{nu+1}(t) - int_t^inf rho_nu(x) dx| (the integer-order index law),
// evaluated with the substitution x = t + e^u.
Real check_fractional_identity(const Real& nu, const Real& t, const PrecisionContext& ctx);

}  // namespace opoly

#endif
