"""The five-squares curve S, its quotient map to C, and pullback analysis.

S is the intersection of three quadrics in P^4 cutting out five squares in
arithmetic progression:

    a^2 - 2b^2 + c^2 = 0,  b^2 - 2c^2 + d^2 = 0,  c^2 - 2d^2 + e^2 = 0.

The degree-4 quotient map to C : y^2 = x^8 + 14x^4 + 1 is

    x = (e - c)/(a - c),   y = 4bd(a - 2c + e)^2 / (a - c)^4,

and a point of C pulls back to S over a field no larger than a quadratic
extension, controlled by the square class of x^4 - 2x^3 + 2x^2 + 2x + 1.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .fields import (
    QQ,
    NumberField,
    QuadExt,
    RationalField,
    nf_is_square,
    nf_sqrt,
)
from .poly import Poly, is_irreducible_q

#: coefficients (low degree first) of the two pullback quartics
Q_MINUS = (1, 2, 2, -2, 1)   # x^4 - 2x^3 + 2x^2 + 2x + 1
Q_PLUS = (1, -2, 2, 2, 1)    # x^4 + 2x^3 + 2x^2 - 2x + 1


def _eval_int_poly(coeffs, x, field):
    """Evaluate an integer-coefficient polynomial at a field element (Horner)."""
    acc = field.zero()
    for c in reversed(coeffs):
        acc = acc * x + field.from_int(c)
    return acc


class SPoint:
    """A projective point (a : b : c : d : e) on the five-squares curve."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords, check=True):
        coords = tuple(coords)
        if len(coords) != 5:
            raise ValueError("need five coordinates")
        self.field = field
        self.coords = coords
        if check and not self.is_valid():
            raise ValueError("point does not satisfy the three quadrics")

    def is_valid(self):
        a, b, c, d, e = self.coords
        two = self.field.from_int(2)
        if all(not v for v in self.coords):
            return False
        return (
            a * a - two * b * b + c * c == self.field.zero()
            and b * b - two * c * c + d * d == self.field.zero()
            and c * c - two * d * d + e * e == self.field.zero()
        )

    def squares(self):
        return tuple(v * v for v in self.coords)

    def __repr__(self):
        return f"SPoint{self.coords!r}"


def map_to_c(p: SPoint):
    """(x, y) on C, defined whenever a != c."""
    a, b, c, d, e = p.coords
    F = p.field
    if a == c:
        raise ZeroDivisionError("a = c: the trivial-progression locus")
    w = a - c
    x = (e - c) / w
    four = F.from_int(4)
    two = F.from_int(2)
    y = four * b * d * (a - two * c + e) * (a - two * c + e) / (w * w * w * w)
    fx = _eval_int_poly((1, 0, 0, 0, 14, 0, 0, 0, 1), x, F)
    if y * y != fx:
        raise AssertionError("image fails the curve equation")
    return x, y


def eq4_value(x, field=None):
    """x^4 - 2x^3 + 2x^2 + 2x + 1, the square-class obstruction for pullback."""
    if field is None:
        if isinstance(x, (int, Fraction)):
            return _eval_int_poly(Q_MINUS, Fraction(x), QQ)
        field = x.field
    return _eval_int_poly(Q_MINUS, x, field)


def rational_is_square(q: Fraction):
    """(flag, root or None) for a rational number."""
    if q < 0:
        return False, None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return True, Fraction(rn, rd)
    return False, None


class PullbackRecord:
    __slots__ = ("x", "y", "base_degree", "obstruction", "is_square", "degree",
                 "defining_poly", "point", "field")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k))

    def __repr__(self):
        return (f"PullbackRecord(deg {self.base_degree} -> {self.degree}, "
                f"square={self.is_square})")


def _charpoly(M, n):
    """det(z*I - M) for an n x n matrix of rationals, by Poly cofactor expansion."""
    z = Poly.x(QQ)
    mat = [[Poly(QQ, [Fraction(-M[i][j])]) + (z if i == j else Poly(QQ, []))
            for j in range(n)] for i in range(n)]
    return _poly_det(mat, n)


def _poly_det(mat, n):
    if n == 1:
        return mat[0][0]
    acc = Poly(QQ, [])
    for j in range(n):
        minor = [[mat[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = mat[0][j] * _poly_det(minor, n - 1)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _norm_charpoly(B, K):
    """Characteristic polynomial of multiplication by B on K as a Q-vector space."""
    if isinstance(K, RationalField):
        return Poly(QQ, [-Fraction(B), Fraction(1)])
    n = K.degree
    cols = []
    basis = [K.one()]
    gen = K.gen()
    for _ in range(n - 1):
        basis.append(basis[-1] * gen)
    for v in basis:
        w = B * v
        cols.append(list(w.coords))
    M = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
    return _charpoly(M, n)


def pullback(x0, y0, curve=None) -> PullbackRecord:
    """Lift the point (x0, y0) of C to the five-squares curve.

    The coordinates are normalized to a - c = 1 over the base field K = Q(x0);
    b^2 = (a^2 + c^2)/2 lands in the square class of eq4_value(x0), so the
    preimage lives over K itself or over K(sqrt(b^2)).
    """
    rational = isinstance(x0, (int, Fraction))
    K = QQ if rational else x0.field
    if rational:
        x0 = Fraction(x0)
        y0 = Fraction(y0)
    one = K.one()
    if x0 == -one:
        raise ZeroDivisionError("x = -1 lies under the a = c locus")
    two = K.from_int(2)
    c = -(one + x0 * x0) / (two * (one + x0))
    a = c + one
    e = c + x0
    B = (a * a + c * c) / two
    obstruction = eq4_value(x0, K)
    if rational:
        is_sq, root = rational_is_square(B)
    else:
        cert = nf_is_square(B)
        is_sq, root = cert.is_square, cert.root
    base_degree = 1 if rational else K.degree
    if is_sq:
        b = root
        d = y0 / (K.from_int(4) * b * (a - two * c + e) * (a - two * c + e))
        pt = SPoint(K, (a, b, c, d, e))
        return PullbackRecord(x=x0, y=y0, base_degree=base_degree,
                              obstruction=obstruction, is_square=True,
                              degree=base_degree, defining_poly=None,
                              point=pt, field=K)
    L = QuadExt(K, B)
    b = L.gen()
    aL, cL, eL = L(a), L(c), L(e)
    d = L(y0) / (L.from_int(4) * b * (aL - L(two) * cL + eL) * (aL - L(two) * cL + eL))
    pt = SPoint(L, (aL, b, cL, d, eL))
    defining, generator = _primitive_defining_poly(L, b, x0, 2 * base_degree)
    return PullbackRecord(x=x0, y=y0, base_degree=base_degree,
                          obstruction=obstruction, is_square=False,
                          degree=2 * base_degree, defining_poly=defining,
                          point=pt, field=L)


def _quad_to_vec(v, n):
    """A QuadExt(K, s) element as a 2n-vector of rationals over Q."""
    def part(u):
        if isinstance(u, Fraction):
            return [u] + [Fraction(0)] * (n - 1)
        return [Fraction(x) for x in u.coords]

    return part(v.a) + part(v.b)


def _minpoly_quad(elem, L, n):
    """Minimal polynomial over Q of an element of a quadratic tower of dim 2n."""
    from .poly import solve_linear

    dim = 2 * n
    powers = [L.one()]
    for _ in range(dim):
        powers.append(powers[-1] * elem)
    vecs = [_quad_to_vec(p, n) for p in powers]
    for m in range(1, dim + 1):
        rows = []
        for i in range(dim):
            rows.append([vecs[j][i] for j in range(m)] + [-vecs[m][i]])
        sol = solve_linear(rows, QQ, m)
        if sol is not None:
            return Poly(QQ, list(sol) + [Fraction(1)])
    raise AssertionError("no dependency found (inconsistent dimension)")


def _primitive_defining_poly(L, b, x0, degree):
    """(minpoly, generator) with the generator primitive for L/Q.

    Tries b, then b + t*x0 for small integers t.
    """
    n = degree // 2
    candidates = [b]
    if not isinstance(x0, Fraction):
        shift = L(x0)
        for t in range(1, 6):
            candidates.append(b + shift * L.from_int(t))
    for cand in candidates:
        m = _minpoly_quad(cand, L, n)
        if m.degree() == degree:
            if not is_irreducible_q(m):
                raise AssertionError("minimal polynomial must be irreducible")
            return m, cand
    raise AssertionError("no primitive element among candidates")


def pullback_normalized(x0, y0):
    """The pullback over the standard sextic model: phi^2 = -1/x0.

    Requires K = Q(x0) of degree 3 with eq4_value(x0) a non-square whose class
    equals that of -1/x0.  Returns (defining_poly, coords) with coords the five
    coordinates as elements of Q[phi]/(defining_poly), normalized so that the
    b-coordinate is phi and the a-coordinate has positive leading sign.
    """
    K = x0.field
    one = K.one()
    two = K.from_int(2)
    if x0 == -one:
        raise ZeroDivisionError("x = -1 lies under the a = c locus")
    c = -(one + x0 * x0) / (two * (one + x0))
    a = c + one
    e = c + x0
    B = (a * a + c * c) / two
    gamma = -one / x0
    lam = nf_sqrt(gamma / B)
    if lam is None:
        raise ValueError("-1/x0 is not in the square class of b^2")
    npoly = _norm_charpoly(gamma, K)
    interleaved = []
    for coeff in npoly.coeffs:
        interleaved.append(coeff)
        interleaved.append(Fraction(0))
    defining = Poly(QQ, interleaved[:-1])
    if not is_irreducible_q(defining):
        raise ValueError("sqrt(-1/x0) does not generate a degree-6 field")
    L = NumberField(list(defining.coeffs))
    phi = L.gen()
    x_im = -L.one() / (phi * phi)

    def emb(v):
        acc = L.zero()
        for co in reversed(list(v.coords)):
            acc = acc * x_im + L.one() * Fraction(co)
        return acc

    d1 = y0 / (K.from_int(4) * B * (a - two * c + e) ** 2)  # d = d1 * sqrt(B)
    a_im = emb(lam * a)
    # fix the sign of lam so the a-coordinate is canonically positive
    flip = False
    for co in a_im.coords:
        if co:
            flip = co < 0
            break
    if flip:
        lam = -lam
        a_im = emb(lam * a)
    coords = (a_im, phi, emb(lam * c), emb(d1) * phi, emb(lam * e))
    pt = SPoint(L, coords)
    return defining, pt


# ---------------------------------------------------------------------------
# the GJX quadratic-field criterion


def gjx_condition(t) -> dict:
    """Evaluate the two quartics at a rational t and test the exactly-one-square
    condition for a five-square progression over Q(sqrt(D)), D = t^8 + 14t^4 + 1."""
    t = Fraction(t)
    qm = _eval_int_poly(Q_MINUS, t, QQ)
    qp = _eval_int_poly(Q_PLUS, t, QQ)
    sm, rm = rational_is_square(qm)
    sp, rp = rational_is_square(qp)
    D = t ** 8 + 14 * t ** 4 + 1
    record = {
        "t": t,
        "q_minus": qm,
        "q_plus": qp,
        "q_minus_square": sm,
        "q_plus_square": sp,
        "condition": sm != sp,
        "D": D,
    }
    if D != qm * qp:
        raise AssertionError("D != q_minus * q_plus")
    if not record["condition"]:
        return record
    # displayed quadratic pullback: (t^2-2t-1, sqrt(q-), t^2+1, sqrt(q+), t^2+2t-1)
    sq = (
        (t * t - 2 * t - 1) ** 2,
        qm,
        (t * t + 1) ** 2,
        qp,
        (t * t + 2 * t - 1) ** 2,
    )
    diffs = {sq[i + 1] - sq[i] for i in range(4)}
    if len(diffs) != 1:
        raise AssertionError("squares are not in arithmetic progression")
    # the non-square slot is D times a rational square
    if sm:
        slot, val, rat = 3, qp, qp / D
    else:
        slot, val, rat = 1, qm, qm / D
    ok, root = rational_is_square(rat)
    if not ok:
        raise AssertionError("irrational slot is not D times a square")
    record.update(progression=sq, common_difference=next(iter(diffs)),
                  sqrt_d_slot=slot, slot_value=val, slot_cofactor_root=root)
    return record


def gjx_scan(bound: int = 50):
    """All t = p/q with |p|, q <= bound passing the condition, each verified."""
    hits = []
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if math.gcd(p, q) != 1:
                continue
            rec = gjx_condition(Fraction(p, q))
            if rec["condition"]:
                hits.append(rec)
    return hits


# ---------------------------------------------------------------------------
# symbolic quotient identities


class MPoly:
    """Sparse polynomial in (a, b, c, d, e) with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    data[mono] = data.get(mono, Fraction(0)) + coeff
                    if not data[mono]:
                        del data[mono]
        self.terms = data

    @classmethod
    def var(cls, i):
        mono = [0] * 5
        mono[i] = 1
        return cls({tuple(mono): Fraction(1)})

    @classmethod
    def const(cls, c):
        return cls({(0, 0, 0, 0, 0): Fraction(c)})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MPoly(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return MPoly(out)

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly({m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return MPoly(out)

    def __pow__(self, n):
        out = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def __repr__(self):
        names = "abcde"
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "".join(f"{names[i]}^{e}" if e > 1 else names[i]
                           for i, e in enumerate(m) if e)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


# rewrite rules derived from the three quadrics: each eliminates one square
_A, _B, _C, _D, _E = (MPoly.var(i) for i in range(5))
_RULES = {
    0: _B * _B * 2 - _C * _C,   # a^2 -> 2b^2 - c^2
    3: _C * _C * 2 - _B * _B,   # d^2 -> 2c^2 - b^2
    4: _D * _D * 2 - _C * _C,   # e^2 -> 2d^2 - c^2
}


def reduce_mod_quadrics(p: MPoly) -> MPoly:
    """Normal form with exponents of a, d, e at most 1 (b, c remain free)."""
    changed = True
    while changed:
        changed = False
        out = MPoly()
        for mono, coeff in p.terms.items():
            hit = None
            for var in (0, 4, 3):  # eliminate a first, then e, then d
                if mono[var] >= 2:
                    hit = var
                    break
            if hit is None:
                out = out + MPoly({mono: coeff})
                continue
            changed = True
            rest = list(mono)
            rest[hit] -= 2
            out = out + _RULES[hit] * MPoly({tuple(rest): coeff})
        p = out
    return p


def verify_quotient_identity() -> dict:
    """Both homogeneous identities behind the quotient map, reduced to 0.

    With X = e - c, W = a - c, Y = 4bd(a - 2c + e):
      (2)  Y^2 = X^8 + 14 X^4 W^4 + W^8   modulo the quadric ideal
      (4)  4 b^2 (a - 2c + e)^2 = X^4 - 2X^3 W + 2X^2 W^2 + 2X W^3 + W^4
    """
    a, b, c, d, e = _A, _B, _C, _D, _E
    X = e - c
    W = a - c
    M = a - c * 2 + e
    Y = b * d * M ** 2 * 4
    curve_rhs = X ** 8 + X ** 4 * W ** 4 * 14 + W ** 8
    id2 = reduce_mod_quadrics(Y ** 2 - curve_rhs)
    eq4_rhs = (X ** 4 - X ** 3 * W * 2 + X ** 2 * W ** 2 * 2
               + X * W ** 3 * 2 + W ** 4)
    id4 = reduce_mod_quadrics(b * b * M ** 2 * 4 - eq4_rhs)
    return {"identity_2": id2.is_zero(), "identity_4": id4.is_zero(),
            "residual_2": id2, "residual_4": id4}


# ---------------------------------------------------------------------------
# finite-field verification of the quotient map


def enumerate_s_points(field):
    """Affine-chart enumeration of S(F_q): representatives with first nonzero
    coordinate equal to 1, found by brute force over the quadrics."""
    elements = list(field.elements())
    zero, one = field.zero(), field.one()
    two = field.from_int(2)
    squares = {}
    for v in elements:
        squares.setdefault(v * v, []).append(v)
    pts = []
    seen = set()
    for a in (zero, one):
        for b in elements:
            if a == zero and b not in (zero, one):
                continue
            for c in elements:
                if a == zero and b == zero and c not in (zero, one):
                    continue
                d2 = two * c * c - b * b
                if d2 not in squares:
                    continue
                lhs1 = a * a - two * b * b + c * c
                if lhs1 != zero:
                    continue
                for d in squares[d2]:
                    e2 = two * d * d - c * c
                    if e2 not in squares:
                        continue
                    for e in squares[e2]:
                        if a == b == c == d == zero and e != one:
                            continue
                        key = (field.sort_key(a), field.sort_key(b), field.sort_key(c),
                               field.sort_key(d), field.sort_key(e))
                        if key in seen:
                            continue
                        seen.add(key)
                        pts.append(SPoint(field, (a, b, c, d, e)))
    return pts


def finite_field_checks(primes=None, minimum: int = 500) -> dict:
    """Check the quotient map and the Eq. (4) identity pointwise over small
    prime fields; every S-point with a != c must map onto C."""
    from .fields import GF, is_prime

    if primes is None:
        primes = [p for p in range(5, 140) if is_prime(p) and p != 3]
    total = 0
    for p in primes:
        field = GF(p)
        for pt in enumerate_s_points(field):
            a, b, c, d, e = pt.coords
            if a == c:
                continue
            x, y = map_to_c(pt)  # raises if the image misses the curve
            lhs = eq4_value(x, field)
            w = a - c
            two = field.from_int(2)
            rhs = (two * b * (a - two * c + e) / (w * w)) ** 2
            if lhs != rhs:
                raise AssertionError(f"Eq. (4) fails at {pt!r} over F_{p}")
            total += 1
    return {"checks": total, "pass": total >= minimum}
