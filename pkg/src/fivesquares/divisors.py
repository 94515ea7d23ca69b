"""Closed points (places) and divisors on a split hyperelliptic curve.

A place is either one of the two infinite points, or an affine closed point
in (u, v) form: u monic irreducible over the base field, v a polynomial of
degree < deg u with v^2 = f mod u.  A Weierstrass (ramified) place has
v = 0; a place whose y-coordinate generates a quadratic extension of the
u-residue field is stored with v = None and degree 2*deg(u).

Divisors are finite integer-weighted sums of places.  `divisor_of_function`
computes exact principal divisors of (a(x) + b(x) y)/c(x).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fields import (
    QQ,
    GF,
    ExtField,
    FpElem,
    NumberField,
    RationalField,
    ff_sqrt,
    nf_sqrt,
)
from .poly import Poly, factor_ff, factor_q, minpoly_of, solve_linear


class Place:
    __slots__ = ("kind", "sign", "u", "v", "ramified")

    def __init__(self, kind, sign=None, u=None, v=None, ramified=False):
        self.kind = kind  # "inf" | "affine"
        self.sign = sign
        self.u = u
        self.v = v
        self.ramified = ramified

    @classmethod
    def infinite(cls, sign):
        return cls("inf", sign=sign)

    @classmethod
    def affine(cls, u, v, ramified=False):
        u = u.monic()
        if v is not None:
            v = v % u
        return cls("affine", u=u, v=v, ramified=ramified)

    @property
    def degree(self):
        if self.kind == "inf":
            return 1
        if self.v is None and not self.ramified:
            return 2 * self.u.degree()
        return self.u.degree()

    def conjugate(self):
        if self.kind == "inf":
            return Place.infinite(-self.sign)
        if self.ramified or self.v is None:
            return self
        return Place.affine(self.u, -self.v, False)

    def sort_key(self):
        if self.kind == "inf":
            return (0, -self.sign)
        vkey = self.v.sort_key() if self.v is not None else ("inert",)
        return (1, self.degree, self.u.sort_key(), vkey)

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "inf":
            return self.sign == other.sign
        return self.u == other.u and self.v == other.v and self.ramified == other.ramified

    def __hash__(self):
        if self.kind == "inf":
            return hash(("inf", self.sign))
        return hash(("aff", self.u, self.v, self.ramified))

    def __repr__(self):
        if self.kind == "inf":
            return "inf+" if self.sign == 1 else "inf-"
        from .poly import render_poly

        if self.v is None and not self.ramified:
            return f"({render_poly(self.u)},*)"
        return f"({render_poly(self.u)},{render_poly(self.v)})"


INF_PLUS_PLACE = Place.infinite(1)
INF_MINUS_PLACE = Place.infinite(-1)


class Divisor:
    """Finite formal sum of places with nonzero integer multiplicities."""

    __slots__ = ("places",)

    def __init__(self, places=None):
        data = {}
        if places:
            for pl, m in (places.items() if isinstance(places, dict) else places):
                if m:
                    data[pl] = data.get(pl, 0) + m
                    if not data[pl]:
                        del data[pl]
        self.places = data

    def degree(self):
        return sum(m * pl.degree for pl, m in self.places.items())

    def is_effective(self):
        return all(m > 0 for m in self.places.values())

    def is_zero(self):
        return not self.places

    def multiplicity(self, place):
        return self.places.get(place, 0)

    def support(self):
        return sorted(self.places, key=lambda p: p.sort_key())

    def __add__(self, other):
        out = dict(self.places)
        for pl, m in other.places.items():
            out[pl] = out.get(pl, 0) + m
            if not out[pl]:
                del out[pl]
        return Divisor(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Divisor({pl: -m for pl, m in self.places.items()})

    def __rmul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return Divisor({pl: n * m for pl, m in self.places.items()})

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.places == other.places

    def __hash__(self):
        return hash(frozenset(self.places.items()))

    def sort_key(self):
        return tuple((pl.sort_key(), m) for pl, m in
                     sorted(self.places.items(), key=lambda t: t[0].sort_key()))

    def __repr__(self):
        return render_divisor(self)


def render_divisor(d):
    if not d.places:
        return "0"
    parts = []
    for pl in d.support():
        m = d.places[pl]
        parts.append(f"{m}*{pl!r}")
    return " + ".join(parts).replace("+ -", "- ")


_TERM_RE = re.compile(r"^(-?\d+)\*(.+)$")


def parse_divisor(text, field):
    """Inverse of render_divisor for divisors over the given coefficient field."""
    text = text.strip()
    if text == "0":
        return Divisor()
    # re-normalize "a - b" into "+ -" separated terms
    chunks = []
    buf = ""
    depth = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and text[i:i + 3] == " + ":
            chunks.append(buf)
            buf = ""
            i += 3
            continue
        if depth == 0 and text[i:i + 3] == " - ":
            chunks.append(buf)
            buf = "-"
            i += 3
            continue
        buf += ch
        i += 1
    chunks.append(buf)
    places = {}
    for chunk in chunks:
        m = _TERM_RE.match(chunk.strip())
        if not m:
            raise ValueError(f"cannot parse divisor term {chunk!r}")
        mult = int(m.group(1))
        body = m.group(2)
        if body == "inf+":
            pl = INF_PLUS_PLACE
        elif body == "inf-":
            pl = INF_MINUS_PLACE
        else:
            if not (body.startswith("(") and body.endswith(")")):
                raise ValueError(f"cannot parse place {body!r}")
            inner = body[1:-1]
            u_text, v_text = _split_place_body(inner)
            u = parse_poly(u_text, field)
            if v_text == "*":
                pl = Place.affine(u, None)
            else:
                v = parse_poly(v_text, field)
                pl = Place.affine(u, v, ramified=v.is_zero())
        places[pl] = places.get(pl, 0) + mult
    return Divisor(places)


def _split_place_body(inner):
    depth = 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return inner[:i], inner[i + 1:]
    raise ValueError(f"bad place body {inner!r}")


def parse_poly(text, field, var="x"):
    """Parse polynomials as rendered by render_poly (integer/fraction coefficients)."""
    text = text.strip().replace(" - ", " + -")
    if text == "0":
        return Poly(field, [])
    coeffs = {}
    for term in text.split(" + "):
        term = term.strip()
        if not term:
            continue
        if var in term:
            if "^" in term:
                head, exp = term.split("^")
                exp = int(exp)
            else:
                head, exp = term, 1
            head = head.replace(f"{var}^" if "^" in term else var, "").rstrip("*").strip()
            head = head[:-len(var)] if head.endswith(var) else head
            head = head.rstrip("*").strip()
            if head in ("", "-"):
                c = Fraction(-1 if head == "-" else 1)
            else:
                c = Fraction(head)
        else:
            exp = 0
            c = Fraction(term)
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + c
    deg = max(coeffs)
    out = [field(coeffs.get(i, Fraction(0))) if not isinstance(field, RationalField)
           else coeffs.get(i, Fraction(0)) for i in range(deg + 1)]
    return Poly(field, out)


class CurveFunction:
    """(a(x) + b(x) y) / c(x) on a hyperelliptic curve."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        if c.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = a.gcd(b).gcd(c)
        if g.degree() > 0:
            a, b, c = a // g, b // g, c // g
        # normalize: monic denominator
        lc = c.lc()
        if lc != c.field.one():
            inv = c.field.one() / lc
            a, b, c = a * inv, b * inv, c * inv
        self.a = a
        self.b = b
        self.c = c

    @classmethod
    def from_poly(cls, a):
        one = Poly(a.field, [a.field.one()])
        return cls(a, Poly(a.field, []), one)

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __mul__(self, other):
        if isinstance(other, CurveFunction):
            raise TypeError("use mul_on_curve with the curve model")
        return CurveFunction(self.a * other, self.b * other, self.c)

    def mul_on_curve(self, other, curve):
        a = self.a * other.a + self.b * other.b * curve.f
        b = self.a * other.b + self.b * other.a
        c = self.c * other.c
        return CurveFunction(a, b, c)

    def evaluate(self, x, y):
        """Value at an affine point with coordinates in any extension field."""
        F = x.field if hasattr(x, "field") else None
        if F is None:
            return (self.a.evaluate(x) + self.b.evaluate(x) * y) / self.c.evaluate(x)
        return (self.a.eval_in(F, x) + self.b.eval_in(F, x) * y) / self.c.eval_in(F, x)

    def __eq__(self, other):
        if not isinstance(other, CurveFunction):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        from .poly import render_poly

        return f"(({render_poly(self.a)}) + ({render_poly(self.b)})*y)/({render_poly(self.c)})"


# ---------------------------------------------------------------------------
# residue fields and place construction


def residue_field(u):
    """(K, image of x) for the residue field base[x]/(u), u irreducible."""
    field = u.field
    if isinstance(field, RationalField):
        if u.degree() == 1:
            return QQ, -u.coeffs[0]
        K = NumberField([c for c in u.coeffs], check_irreducible=False)
        return K, K.gen()
    if u.degree() == 1:
        return field, -u.coeffs[0] / u.coeffs[1]
    if isinstance(field, ExtField):
        raise NotImplementedError("places over proper extension fields of F_p")
    K = ExtField(field.p, [c.value for c in u.coeffs])
    return K, K.gen()


def sqrt_mod_u(f, u):
    """Square root v of f in base[x]/(u): ("ramified", 0), ("split", v), or ("inert", None)."""
    field = u.field
    K, xbar = residue_field(u)
    img = f.eval_in(K, xbar) if K is not QQ else f.evaluate(-u.coeffs[0])
    if not img:
        return "ramified", Poly(field, [])
    if K is QQ:
        num, den = img.numerator, img.denominator
        import math

        rn, rd = math.isqrt(num), math.isqrt(den)
        if num >= 0 and rn * rn == num and rd * rd == den:
            return "split", Poly(QQ, [Fraction(rn, rd)])
        return "inert", None
    if isinstance(K, NumberField):
        r = nf_sqrt(img)
        if r is None:
            return "inert", None
        return "split", Poly(QQ, list(r.coords))
    r = ff_sqrt(img)
    if r is None:
        return "inert", None
    if isinstance(r, FpElem):
        return "split", Poly(field, [r])
    return "split", Poly(field, [field(c) for c in r.coords])


def places_over(u, curve):
    """The places of the curve above the irreducible u, with val_P(u) weights.

    Returns [(place, val_P(u))].
    """
    kind, v = sqrt_mod_u(curve.f, u)
    if kind == "ramified":
        return [(Place.affine(u, Poly(u.field, []), ramified=True), 2)]
    if kind == "inert":
        return [(Place.affine(u, None), 1)]
    return [(Place.affine(u, v), 1), (Place.affine(u, -v), 1)]


def place_from_point(x, y, curve):
    """The closed point of an affine point with coordinates in an extension."""
    field = getattr(x, "field", None)
    base = curve.field
    if not curve.is_on_curve(x, y):
        raise ValueError("point not on curve")
    if field is None or isinstance(field, RationalField) or field == base:
        u = Poly(base, [-x, base.one()]) if not isinstance(base, RationalField) \
            else Poly(QQ, [-Fraction(x), Fraction(1)])
        v = Poly(base, [y]) if not isinstance(base, RationalField) else Poly(QQ, [Fraction(y)])
        return Place.affine(u, v, ramified=not y)
    u = minpoly_of(x, field)
    u = u.map_coeffs(base) if u.field != base else u
    d = u.degree()
    # express y in the power basis of x if possible
    width = field.degree
    powers = [field.one()]
    for _ in range(d - 1):
        powers.append(powers[-1] * x)
    fld = QQ if base.char == 0 else base
    rows = []
    ycoords = list(y.coords) if hasattr(y, "coords") else [y]
    for j in range(width):
        row = []
        for pw in powers:
            pc = list(pw.coords) if hasattr(pw, "coords") else [pw]
            row.append(_lift_coeff(pc[j] if j < len(pc) else 0, fld))
        row.append(_lift_coeff(ycoords[j] if j < len(ycoords) else 0, fld))
        rows.append(row)
    sol = solve_linear(rows, fld, d)
    if sol is None:
        return Place.affine(u, None)
    v = Poly(u.field, [u.field(c) if not isinstance(u.field, RationalField) else Fraction(c)
                       for c in sol])
    if (v * v - curve.f) % u != Poly(u.field, []):
        raise AssertionError("inconsistent place: v^2 != f mod u")
    return Place.affine(u, v, ramified=v.is_zero() and curve.f % u == Poly(u.field, []))


def _lift_coeff(c, fld):
    if isinstance(fld, RationalField):
        return Fraction(c) if isinstance(c, (int, Fraction)) else c
    if isinstance(c, int):
        return fld.from_int(c)
    return c


def involution(d: Divisor) -> Divisor:
    """Hyperelliptic involution acting on divisors: (u, v) -> (u, -v), inf signs swap."""
    return Divisor({pl.conjugate(): m for pl, m in d.places.items()})


# ---------------------------------------------------------------------------
# principal divisors


def _factor_base(a):
    """Irreducible factorization over the base field of a."""
    if isinstance(a.field, RationalField):
        return [(f.monic(), m) for f, m in factor_q(a)]
    return factor_ff(a)


def _poly_divisor(a, curve):
    """div of a polynomial in x viewed as a function on the curve."""
    if a.degree() == 0:
        return Divisor()
    out = Divisor()
    for u, mult in _factor_base(a):
        for pl, w in places_over(u, curve):
            out = out + Divisor({pl: mult * w})
    n = a.degree()
    out = out + Divisor({INF_PLUS_PLACE: -n, INF_MINUS_PLACE: -n})
    return out


def _valuation_poly(a, u):
    """v_u(a) for u irreducible."""
    if a.is_zero():
        raise ValueError("zero polynomial")
    k = 0
    while True:
        q, r = divmod(a, u)
        if not r.is_zero():
            return k
        a = q
        k += 1


def _infinite_valuations(a, b, curve, affine_degree):
    """(v_inf+, v_inf-) of a(x) + b(x) y via the series expansion of y."""
    g = curve.genus
    top = max(a.degree(), b.degree() + g + 1, 0)
    depth = affine_degree + top + 2
    s = curve.infinity_series(depth + g + 2)
    vals = []
    for sign in (1, -1):
        # coefficients of x^j, j from top down to -(depth - top)
        lo = top - depth
        coeffs = {}
        for i, ai in enumerate(a.coeffs):
            if ai:
                coeffs[i] = coeffs.get(i, curve.field.zero()) + ai
        for i, bi in enumerate(b.coeffs):
            if bi:
                for k, sk in enumerate(s):
                    j = i + g + 1 - k
                    if j < lo:
                        break
                    term = bi * sk
                    if sign == -1:
                        term = -term
                    coeffs[j] = coeffs.get(j, curve.field.zero()) + term
        val = None
        for j in range(top, lo - 1, -1):
            if coeffs.get(j):
                val = -j
                break
        vals.append(val)
    vplus, vminus = vals
    if vplus is None and vminus is None:
        raise AssertionError("series depth exhausted on both branches")
    if vplus is None:
        vplus = -affine_degree - vminus
    if vminus is None:
        vminus = -affine_degree - vplus
    return vplus, vminus


def divisor_of_function(fn: CurveFunction, curve) -> Divisor:
    """The principal divisor of (a + b y)/c; total degree is always 0."""
    if fn.is_zero():
        raise ZeroDivisionError("zero function has no divisor")
    a, b, c = fn.a, fn.b, fn.c
    out = Divisor()
    if not c.degree() == 0 or c.coeffs[0] != curve.field.one():
        out = out - _poly_divisor(c, curve)
    if b.is_zero():
        return out + _poly_divisor(a, curve)
    # peel common polynomial content of (a, b)
    content = a.gcd(b) if not a.is_zero() else b.monic()
    if content.degree() > 0:
        out = out + _poly_divisor(content, curve)
        a, b = a // content, b // content
    norm = a * a - b * b * curve.f
    assert not norm.is_zero()
    affine = Divisor()
    for u, e in _factor_base(norm):
        fu = curve.f % u
        if fu.is_zero():
            # Weierstrass place: uniformizer y, v(x-part) doubles
            va = _valuation_poly(a, u) if not a.is_zero() else None
            vb = _valuation_poly(b, u)
            cand = []
            if va is not None:
                cand.append(2 * va)
            cand.append(2 * vb + 1)
            val = min(cand)
            pl = Place.affine(u, Poly(u.field, []), ramified=True)
            affine = affine + Divisor({pl: val})
            continue
        bu = b % u
        if bu.is_zero():
            continue  # u cannot divide the peeled norm at a non-ramified place
        v = (-a * bu.invmod(u)) % u
        pl = Place.affine(u, v)
        affine = affine + Divisor({pl: e})
    aff_total = affine.degree()
    vplus, vminus = _infinite_valuations(a, b, curve, aff_total)
    out = out + affine + Divisor({INF_PLUS_PLACE: vplus, INF_MINUS_PLACE: vminus})
    if out.degree() != 0:
        raise AssertionError("principal divisor degree is not zero")
    return out


def is_irreducible_degree3(d: Divisor, base_field=None) -> bool:
    """True iff d is a single affine place of degree 3 (irreducible cubic u)."""
    if not d.is_effective() or d.degree() != 3:
        raise ValueError("expected an effective degree-3 divisor")
    if len(d.places) != 1:
        return False
    (pl, m), = d.places.items()
    if m != 1 or pl.kind != "affine" or pl.degree != 3 or pl.v is None:
        return False
    from .poly import is_irreducible_q

    if isinstance(pl.u.field, RationalField):
        return is_irreducible_q(pl.u)
    return len(factor_ff(pl.u)) == 1
