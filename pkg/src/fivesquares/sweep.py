"""Degree-k point sweeps over the 128 rational divisor classes.

For each class D_i (labeled by exponents (e1, e2, e3) of the generators) and
each k in {1, 2, 3}, compute l(D_i + k*inf-).  When l = 1 the linear system
contains a unique effective divisor of degree k, and every rational point
(k = 1), quadratic point (k = 2), or cubic point (k = 3) of the curve must
show up among those divisors; classifying them enumerates all such points.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .curve import CurveModel, INF_MINUS, INF_PLUS
from .divisors import (
    INF_MINUS_PLACE,
    Divisor,
    involution,
    render_divisor,
)
from .jacobian import torsion_group
from .riemann_roch import lspace
from .divisors import divisor_of_function

#: bound for the exhaustive rational-point completeness cross-check
RATIONAL_SEARCH_BOUND = 1000


class SweepRow:
    __slots__ = ("index", "combo", "degree", "ell", "effective", "classification",
                 "involution_fixed", "basis")

    def __init__(self, index, combo, degree, ell, effective, classification,
                 involution_fixed, basis=None):
        self.index = index
        self.combo = combo
        self.degree = degree
        self.ell = ell
        self.effective = effective
        self.classification = classification
        self.involution_fixed = involution_fixed
        self.basis = basis

    def as_dict(self):
        return {
            "index": self.index,
            "combo": list(self.combo),
            "degree": self.degree,
            "ell": self.ell,
            "effective": render_divisor(self.effective) if self.effective else None,
            "classification": self.classification,
            "involution_fixed": self.involution_fixed,
        }

    def __repr__(self):
        return f"SweepRow({self.combo}, k={self.degree}, l={self.ell}, {self.classification})"


def _classify(E: Divisor, k: int):
    """(classification, involution_fixed) for an effective degree-k divisor."""
    fixed = involution(E) == E
    if len(E.places) == 1:
        (pl, m), = E.places.items()
        if m == 1 and pl.degree == k and not (pl.kind == "affine" and pl.v is None):
            if pl.kind == "affine" and pl.u.degree() == k:
                return ("irreducible" if not fixed else "involution-fixed"), fixed
        if m == 1 and pl.degree == k and pl.kind == "inf":
            return "irreducible", fixed  # a rational point at infinity (k = 1)
    if fixed:
        return "involution-fixed", fixed
    return "reducible", fixed


def sweep(curve: CurveModel, k: int, table=None):
    """One SweepRow per class, in lexicographic (e1, e2, e3) order."""
    if k not in (1, 2, 3):
        raise ValueError("degree k must be 1, 2, or 3")
    if table is None:
        table = torsion_group(curve)
    rows = []
    for index, combo in enumerate(sorted(table)):
        cls = table[combo]
        D = cls.representative() + Divisor({INF_MINUS_PLACE: k})
        space = lspace(D, curve)
        ell = space.dimension
        if ell == 0:
            rows.append(SweepRow(index, combo, k, 0, None, "empty", False))
            continue
        if ell >= 2:
            rows.append(SweepRow(index, combo, k, ell, None, "base-point-family",
                                 False, basis=space.basis))
            continue
        E = D + divisor_of_function(space.basis[0], curve)
        if not (E.is_effective() and E.degree() == k):
            raise AssertionError("unique effective divisor malformed")
        classification, fixed = _classify(E, k)
        rows.append(SweepRow(index, combo, k, 1, E, classification, fixed))
    return rows


def histogram(rows):
    out = {}
    for row in rows:
        out[row.ell] = out.get(row.ell, 0) + 1
    return out


def rational_points(curve: CurveModel, rows=None, table=None):
    """The rational points of the curve, harvested from the degree-1 sweep."""
    if rows is None:
        rows = sweep(curve, 1, table=table)
    pts = []
    for row in rows:
        if row.ell != 1:
            continue
        (pl, m), = row.effective.places.items()
        if pl.kind == "inf":
            pts.append(INF_PLUS if pl.sign == 1 else INF_MINUS)
        else:
            x = -pl.u.coeffs[0]
            y = pl.v.coeffs[0] if pl.v.coeffs else Fraction(0)
            pts.append((x, y))
    return pts


def rational_point_search(curve: CurveModel, bound: int = RATIONAL_SEARCH_BOUND):
    """All affine rational points with x = p/q, |p|, q <= bound, by integer search.

    f(p/q) is a square iff p^8 + 14 p^4 q^4 + q^8 is a perfect square.
    """
    found = []
    for q in range(1, bound + 1):
        for p in range(0, bound + 1):
            if math.gcd(p, q) != 1:
                continue
            n = p ** 8 + 14 * (p ** 4) * (q ** 4) + q ** 8
            r = math.isqrt(n)
            if r * r != n:
                continue
            x = Fraction(p, q)
            y = Fraction(r, q ** 4)
            for xv in ({x, -x}):  # f is even, so -x works iff x does
                for yv in ({y, -y}):
                    found.append((xv, yv))
    return sorted(set(found))


def cubic_points(curve: CurveModel, rows=None, table=None):
    """The irreducible effective degree-3 divisors (cubic points up to conjugacy).

    Each entry is (place, combo) with the generator-exponent provenance.
    """
    if rows is None:
        rows = sweep(curve, 3, table=table)
    out = []
    for row in rows:
        if row.ell == 1 and row.classification == "irreducible":
            (pl, _), = row.effective.places.items()
            out.append((pl, row.combo))
    return out


def quadratic_points(curve: CurveModel, rows=None, table=None):
    """Classification record of the degree-2 sweep (quadratic-point analysis)."""
    if rows is None:
        rows = sweep(curve, 2, table=table)
    irreducible = [(row.effective, row.combo) for row in rows
                   if row.ell == 1 and row.classification == "irreducible"]
    pencils = [(row.combo, row.basis) for row in rows if row.ell >= 2]
    return {
        "histogram": histogram(rows),
        "irreducible": irreducible,
        "pencils": pencils,
        "rows": rows,
    }


# ---------------------------------------------------------------------------
# table emission


def rows_to_json(rows) -> str:
    return json.dumps([row.as_dict() for row in rows], indent=2)


def rows_to_text(rows) -> str:
    header = f"{'idx':>4} {'(e1,e2,e3)':>11} {'k':>2} {'l':>2}  {'class':<18} effective"
    lines = [header, "-" * len(header)]
    for row in rows:
        eff = render_divisor(row.effective) if row.effective else "-"
        combo = "({},{},{})".format(*row.combo)
        lines.append(
            f"{row.index:>4} {combo:>11} {row.degree:>2} {row.ell:>2}  "
            f"{row.classification:<18} {eff}"
        )
    return "\n".join(lines)
