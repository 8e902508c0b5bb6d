"""Exact arithmetic over Z[q, q^-1][x, a] for q-r-Stirling numbers, their
Bell-type polynomials, the associated orthogonal polynomials and closed-form
Hankel determinants."""

from .exactalg import MPoly, QLaurent, QRational, TruncSeries, NonExactDivision
from .qcore import q_binomial, q_factorial, q_int, q_pochhammer
from .rstirling import bigphi, falling, falling_scaled, phi, stirling
from .orthopoly import MomentFunctional, OrthFamily, big_h_poly, g_poly, h_poly
from .hankel import (
    build_hankel,
    closed_form_theorem21,
    closed_form_theorem31,
    det_bareiss,
    det_cofactor,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "MPoly", "QLaurent", "QRational", "TruncSeries", "NonExactDivision",
    "q_int", "q_factorial", "q_binomial", "q_pochhammer",
    "stirling", "falling", "falling_scaled", "phi", "bigphi",
    "MomentFunctional", "OrthFamily", "h_poly", "g_poly", "big_h_poly",
    "build_hankel", "det_bareiss", "det_cofactor",
    "closed_form_theorem21", "closed_form_theorem31", "verify_theorem",
]
