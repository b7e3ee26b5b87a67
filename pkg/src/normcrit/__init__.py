"""Coefficient criteria for normal polynomials over finite fields.

Symbolic side: the circulant determinant Delta_n, its primitive factor Psi_n,
the symmetrizations Phi_n and Theta_{n,m}, and their expressions theta_{n,m}
in the elementary symmetric polynomials.  Field side: evaluating
h_n = prod theta_{n,m} (or its characteristic-p version h_{p,n}) at the
coefficients of a monic irreducible f; a nonzero value certifies that the
roots of f form a normal basis.  The census module counts normal polynomials
by a closed formula and by exhaustive search.
"""

from .errors import NormcritError, RefusedTooLarge
from .exactalg import CYC, GF, ZZ, CycInteger, SparsePoly
from .elemsym import EPoly, h_char0, h_p, theta_small, to_elementary
from .gfkit import check_criterion, field_of_order, is_normal_exact, parse_poly
from .census import census_exhaustive, count_normal_formula
from .symmetrization import delta, phi, psi, sigma, theta_big

__version__ = "0.1.0"

__all__ = [
    "CYC",
    "GF",
    "ZZ",
    "CycInteger",
    "EPoly",
    "NormcritError",
    "RefusedTooLarge",
    "SparsePoly",
    "census_exhaustive",
    "check_criterion",
    "count_normal_formula",
    "delta",
    "field_of_order",
    "h_char0",
    "h_p",
    "is_normal_exact",
    "parse_poly",
    "phi",
    "psi",
    "sigma",
    "theta_big",
    "theta_small",
    "to_elementary",
]
