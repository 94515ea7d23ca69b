"""Exact-arithmetic toolkit for squares in arithmetic progression over
cubic number fields.

The package verifies, step by step and in exact arithmetic, that the genus-3
curve y^2 = x^8 + 14x^4 + 1 has Jacobian torsion (Z/4)^2 x Z/8 over Q, that
its points over number fields of degree up to 3 are exactly the ones found
by a Riemann-Roch sweep of the 128 rational divisor classes, and that none
of the 16 cubic points lift to the five-squares curve over a cubic field.
"""

from .curve import CurveModel, paper_curve
from .divisors import Divisor, Place
from .jacobian import (
    DivisorClass,
    span,
    standard_generators,
    torsion_bound_check,
    torsion_group,
    two_torsion_classify,
)
from .progression import (
    SPoint,
    gjx_condition,
    gjx_scan,
    map_to_c,
    pullback,
    pullback_normalized,
    verify_quotient_identity,
)
from .report import Report, run_all
from .riemann_roch import ell, lspace
from .sweep import cubic_points, quadratic_points, rational_points, sweep

__version__ = "1.0.0"

__all__ = [
    "CurveModel",
    "Divisor",
    "DivisorClass",
    "Place",
    "Report",
    "SPoint",
    "cubic_points",
    "ell",
    "gjx_condition",
    "gjx_scan",
    "lspace",
    "map_to_c",
    "paper_curve",
    "pullback",
    "pullback_normalized",
    "quadratic_points",
    "rational_points",
    "run_all",
    "span",
    "standard_generators",
    "sweep",
    "torsion_bound_check",
    "torsion_group",
    "two_torsion_classify",
    "verify_quotient_identity",
]
