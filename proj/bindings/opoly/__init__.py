"""Orthonormal polynomials for the weight x^nu * exp(-x - t/x) on (0, inf).

Thin wrapper over the C++ core; all high-precision values cross the boundary
as decimal strings.
"""

from ._opoly import (
    coeffs,
    eval_poly,
    expand,
    gamma,
    gauss_rule,
    identity_catalog,
    laguerre,
    rho,
    verify,
)

__all__ = [
    "coeffs",
    "eval_poly",
    "expand",
    "gamma",
    "gauss_rule",
    "identity_catalog",
    "laguerre",
    "rho",
    "verify",
]
