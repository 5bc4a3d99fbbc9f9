#ifndef OPOLY_DETAIL_GAUSS_LEGENDRE_HPP
#define OPOLY_DETAIL_GAUSS_LEGENDRE_HPP

#include <vector>

#include "opoly/real.hpp"

namespace opoly::detail {

struct GLRule {
    std::vector<Real> nodes;    // on (-1, 1), ascending
    std::vector<Real> weights;
};

// p-point Gauss-Legendre rule at the current working precision (Newton on
// P_p from double seeds; a handful of iterations reach full precision).
GLRule gauss_legendre(int p);

}  // namespace opoly::detail

#endif
