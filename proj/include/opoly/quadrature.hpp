#ifndef OPOLY_QUADRATURE_HPP
#define OPOLY_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "opoly/recurrence.hpp"

namespace opoly {

// m-point Gauss rule for the weight x^nu e^{-x-t/x}: nodes are the zeros of
// P_m (eigenvalues of the Jacobi matrix), weights rho_{nu+1}(t) times the
// squared first eigenvector components. Exact through degree 2m-1.
struct QuadratureRule {
    Real nu;
    Real t;
    int m = 0;
    std::vector<Real> nodes;    // strictly increasing, all positive
    std::vector<Real> weights;  // all positive, summing to rho_{nu+1}(t)
};

// Sturm-sequence bisection for the eigenvalues, inverse iteration for the
// first eigenvector components. Needs table rows 0..m-1, i.e. m <= n_max+1.
QuadratureRule gauss_rule(const RecurrenceTable& table, int m, const PrecisionContext& ctx);

// sum w_i f(x_i). Exact only for polynomial f of degree <= 2m-1.
Real integrate(const QuadratureRule& rule, const std::function<Real(const Real&)>& f);

// Guarded variant for non-polynomial integrands (negative powers etc.): the
// rule is only a sanity check there and must be generously sized.
Real integrate_nonpolynomial(const QuadratureRule& rule, const std::function<Real(const Real&)>& f,
                             int degree_hint);

// (n_max+1)-square matrix of discretized inner products <P_i, P_j>.
std::vector<std::vector<Real>> gram(const RecurrenceTable& table, const QuadratureRule& rule,
                                    int n_max);

}  // namespace opoly

#endif
