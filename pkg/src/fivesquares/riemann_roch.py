"""Riemann-Roch spaces L(D) on a split hyperelliptic curve.

Candidate functions have the shape (a(x) + b(x) y)/c(x) with c the product
of the u-parts of the positive affine constraints of D (every function of
the curve lies in Q(x) + Q(x) y, so this shape is complete).  Pole bounds at
the two infinite points cap deg a and deg b; affine vanishing conditions
and leading-behavior cancellation conditions at infinity are linear in the
unknown coefficients, and the kernel of the resulting system is the basis.
"""

from __future__ import annotations

from .divisors import (
    INF_MINUS_PLACE,
    INF_PLUS_PLACE,
    CurveFunction,
    Divisor,
    divisor_of_function,
)
from .poly import Poly, kernel_basis


class LSpace:
    """A computed basis of L(D): functions fn with div(fn) + D >= 0."""

    __slots__ = ("divisor", "basis")

    def __init__(self, divisor, basis):
        self.divisor = divisor
        self.basis = basis

    @property
    def dimension(self):
        return len(self.basis)

    def __repr__(self):
        return f"LSpace(dim {self.dimension})"


def _refine_v(u, v, f, r):
    """v_r with v_r = v mod u and v_r^2 = f mod u^r (Hensel refinement)."""
    if r <= 1:
        return v % u
    vk = v % u
    k = 1
    while k < r:
        k = min(2 * k, r)
        mod = u ** k
        inv2v = (vk + vk).invmod(mod)
        vk = (vk - (vk * vk - f) * inv2v) % mod
    return vk


def _group_affine(D):
    """Group the affine places of D by their u polynomial.

    Returns {u: {"split": [(place, mult), ...], "ramified": ..., "inert": ...}}.
    """
    groups = {}
    for pl, m in D.places.items():
        if pl.kind != "affine":
            continue
        entry = groups.setdefault(pl.u, {"split": [], "ramified": None, "inert": None})
        if pl.ramified:
            entry["ramified"] = (pl, m)
        elif pl.v is None:
            entry["inert"] = (pl, m)
        else:
            entry["split"].append((pl, m))
    return groups


def lspace(D: Divisor, curve) -> LSpace:
    """Basis of L(D), exactly; the empty basis encodes l(D) = 0."""
    field = curve.field
    g = curve.genus
    one = field.one()
    zero = field.zero()
    groups = _group_affine(D)

    # denominator c and the residual vanishing requirement at each place
    c = Poly(field, [one])
    requirements = []  # (kind, u, data, r)
    for u, entry in groups.items():
        mults = []
        if entry["ramified"]:
            n = entry["ramified"][1]
            m_u = max(-(-n // 2), 0)  # ceil(n/2)
            if m_u:
                c = c * u ** m_u
            r = 2 * m_u - n
            if r > 0:
                requirements.append(("ramified", u, None, r))
            continue
        if entry["inert"]:
            n = entry["inert"][1]
            m_u = max(n, 0)
            if m_u:
                c = c * u ** m_u
            r = m_u - n
            if r > 0:
                requirements.append(("inert", u, None, r))
            continue
        split = dict()
        for pl, m in entry["split"]:
            split[pl] = m
            # the conjugate place shares u, so c = u^m puts a pole there too
            conj = pl.conjugate()
            if conj not in split:
                split[conj] = 0
        for pl in list(split):
            if pl in D.places:
                split[pl] = D.places[pl]
        m_u = max([m for m in split.values()] + [0])
        if m_u:
            c = c * u ** m_u
        for pl, n in split.items():
            r = m_u - n
            if r > 0:
                requirements.append(("split", u, pl.v, r))

    s_plus = D.multiplicity(INF_PLUS_PLACE)
    s_minus = D.multiplicity(INF_MINUS_PLACE)
    t_plus = s_plus + c.degree()
    t_minus = s_minus + c.degree()
    A = max(t_plus, t_minus)
    B = A - (g + 1)
    if A < 0 and B < 0:
        return LSpace(D, [])
    na = A + 1 if A >= 0 else 0
    nb = B + 1 if B >= 0 else 0
    n_unknowns = na + nb
    if n_unknowns == 0:
        return LSpace(D, [])

    rows = []

    def add_row(coeffs_a, coeffs_b):
        row = [zero] * n_unknowns
        for i, v in coeffs_a:
            if i < na:
                row[i] = row[i] + v
        for j, v in coeffs_b:
            if j < nb:
                row[na + j] = row[na + j] + v
        rows.append(row)

    # affine vanishing conditions
    for kind, u, v, r in requirements:
        if kind == "ramified":
            ra = -(-r // 2)          # u^ceil(r/2) | a
            rb = -(-(r - 1) // 2)    # u^ceil((r-1)/2) | b
            for power, count, is_b in ((u ** ra, ra, False), (u ** rb, rb, True)):
                if count <= 0:
                    continue
                deg_mod = power.degree()
                limit = nb if is_b else na
                cols = []
                for i in range(limit):
                    rem = (Poly.x(field) ** i) % power
                    cols.append(rem)
                for coeff_idx in range(deg_mod):
                    if is_b:
                        add_row([], [(i, cols[i][coeff_idx]) for i in range(limit)])
                    else:
                        add_row([(i, cols[i][coeff_idx]) for i in range(limit)], [])
            continue
        if kind == "inert":
            power = u ** r
            deg_mod = power.degree()
            for limit, is_b in ((na, False), (nb, True)):
                cols = [(Poly.x(field) ** i) % power for i in range(limit)]
                for coeff_idx in range(deg_mod):
                    pairs = [(i, cols[i][coeff_idx]) for i in range(limit)]
                    if is_b:
                        add_row([], pairs)
                    else:
                        add_row(pairs, [])
            continue
        # split: a + b*v_r = 0 mod u^r
        power = u ** r
        v_r = _refine_v(u, v, curve.f, r)
        deg_mod = power.degree()
        xa = [(Poly.x(field) ** i) % power for i in range(na)]
        xb = [((Poly.x(field) ** j) * v_r) % power for j in range(nb)]
        for coeff_idx in range(deg_mod):
            add_row(
                [(i, xa[i][coeff_idx]) for i in range(na)],
                [(j, xb[j][coeff_idx]) for j in range(nb)],
            )

    # pole-order conditions at the infinite points: the w-series of
    # a(x) +- b(x) x^(g+1) s(1/x) may keep only x^j terms with j <= t
    max_k = max(nb - 1 + g + 1 + (0 if min(t_plus, t_minus) >= 0 else -min(t_plus, t_minus)) + 2, 4)
    s = curve.infinity_series(max_k + 1)
    for sign, t in ((1, t_plus), (-1, t_minus)):
        jlo = t + 1
        for j in range(A, jlo - 1, -1):
            coeffs_a = [(j, one)] if 0 <= j < na else []
            coeffs_b = []
            for i in range(nb):
                k = i + g + 1 - j
                if 0 <= k < len(s):
                    term = s[k] if sign == 1 else -s[k]
                    coeffs_b.append((i, term))
            if coeffs_a or coeffs_b:
                add_row(coeffs_a, coeffs_b)
            elif j >= 0:
                pass

    kernel = kernel_basis(rows, field, n_unknowns) if rows else \
        [[one if i == j else zero for i in range(n_unknowns)] for j in range(n_unknowns)]
    kernel = _normalize_kernel(kernel, field)
    basis = []
    for vec in kernel:
        a = Poly(field, vec[:na])
        b = Poly(field, vec[na:])
        basis.append(CurveFunction(a, b, c))
    return LSpace(D, basis)


def _normalize_kernel(vectors, field):
    """Reduced-echelon normalization for a reproducible basis."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return vecs
    width = len(vecs[0])
    one = field.one()
    r = 0
    for col in range(width):
        piv = None
        for i in range(r, len(vecs)):
            if vecs[i][col]:
                piv = i
                break
        if piv is None:
            continue
        vecs[r], vecs[piv] = vecs[piv], vecs[r]
        inv = one / vecs[r][col]
        vecs[r] = [c * inv for c in vecs[r]]
        for i in range(len(vecs)):
            if i != r and vecs[i][col]:
                f = vecs[i][col]
                vecs[i] = [a - f * b for a, b in zip(vecs[i], vecs[r])]
        r += 1
        if r == len(vecs):
            break
    return vecs


def ell(D: Divisor, curve) -> int:
    return lspace(D, curve).dimension


def unique_effective(D: Divisor, curve) -> Divisor:
    """The unique effective divisor linearly equivalent to D (needs l(D) = 1)."""
    space = lspace(D, curve)
    if space.dimension != 1:
        raise ValueError(f"l(D) = {space.dimension}, expected 1")
    E = D + divisor_of_function(space.basis[0], curve)
    if not E.is_effective():
        raise AssertionError("computed representative is not effective")
    return E


def is_principal(D: Divisor, curve):
    """A function fn with div(fn) = D, or None when D is not principal."""
    if D.degree() != 0:
        return None
    if D.is_zero():
        return CurveFunction.from_poly(Poly(curve.field, [curve.field.one()]))
    space = lspace(-D, curve)
    if space.dimension != 1:
        return None
    fn = space.basis[0]
    if divisor_of_function(fn, curve) == D:
        return fn
    return None
