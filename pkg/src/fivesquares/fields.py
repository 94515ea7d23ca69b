"""Exact coefficient domains: Q, prime fields, extension fields, number fields.

Every element type is immutable and hashable, supports the usual arithmetic
operators, and belongs to a field object providing `zero()`, `one()`,
`from_int()` and a deterministic `sort_key()`.  Rationals are plain
`fractions.Fraction` values owned by the `RationalField` singleton `QQ`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def odd_primes():
    """Ascending odd primes 3, 5, 7, ..."""
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


class RationalField:
    """The field Q; elements are `fractions.Fraction`."""

    char = 0
    order = None

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def __call__(self, x):
        return Fraction(x)

    def sort_key(self, x):
        return (x.numerator, x.denominator)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class FpElem:
    """Element of F_p."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value % field.p

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.field.p != self.field.p:
                raise ValueError("mixed prime fields")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.field.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.field.p}")
            return other.numerator * pow(other.denominator, -1, self.field.p)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(self.field, self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(self.field, self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(self.field, v - self.value)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(self.field, self.value * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(self.field, self.value * pow(v, -1, self.field.p))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FpElem(self.field, v * pow(self.value, -1, self.field.p))

    def __pow__(self, n):
        if n < 0:
            return FpElem(self.field, pow(pow(self.value, -1, self.field.p), -n, self.field.p))
        return FpElem(self.field, pow(self.value, n, self.field.p))

    def __neg__(self):
        return FpElem(self.field, -self.value)

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


class PrimeField:
    """F_p for an odd (or 2) prime p."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.degree = 1

    def __call__(self, v):
        if isinstance(v, FpElem):
            if v.field.p != self.p:
                raise ValueError("mixed prime fields")
            return v
        if isinstance(v, Fraction):
            return FpElem(self, v.numerator * pow(v.denominator, -1, self.p))
        return FpElem(self, v)

    def zero(self):
        return FpElem(self, 0)

    def one(self):
        return FpElem(self, 1)

    def from_int(self, n):
        return FpElem(self, n)

    def sort_key(self, x):
        return (x.value,)

    def elements(self):
        for v in range(self.p):
            yield FpElem(self, v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


class ExtElem:
    """Element of F_{p^k}, stored as a coordinate tuple over F_p."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(c % field.p for c in coords)
        if len(self.coords) != field.degree:
            raise ValueError("coordinate length mismatch")

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixed extension fields")
            return other
        if isinstance(other, (int, FpElem)):
            return self.field.from_int(int(other) if isinstance(other, int) else other.value)
        if isinstance(other, Fraction):
            p = self.field.p
            return self.field.from_int(other.numerator * pow(other.denominator, -1, p))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.field.one()
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        return self.field._inverse(self)

    def __neg__(self):
        return ExtElem(self.field, [-a for a in self.coords])

    def __eq__(self, other):
        if isinstance(other, (int, FpElem, ExtElem, Fraction)):
            o = self._coerce(other)
            return self.coords == o.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.degree, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return f"Ext{self.coords}"


class ExtField:
    """F_{p^k} = F_p[t]/(defining polynomial), coordinates over F_p."""

    def __init__(self, p, defining):
        """`defining`: monic irreducible, low-degree-first int coefficients incl. lead 1."""
        if not is_prime(p) or p == 2:
            raise ValueError("odd prime base required")
        defining = [c % p for c in defining[:-1]] + [defining[-1]]
        if defining[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        self.p = p
        self.char = p
        self.defining = tuple(defining)
        self.degree = len(defining) - 1
        self.order = p ** self.degree
        # t^degree = -(lower part); reduction rows for t^d .. t^(2d-2)
        d = self.degree
        rows = []
        cur = [(-c) % p for c in defining[:-1]]  # t^d
        rows.append(list(cur))
        for _ in range(d - 2):
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            nxt = [(nxt[i] + lead * rows[0][i]) % p for i in range(d)]
            rows.append(nxt)
            cur = nxt
        self._red = rows
        if not self._is_irreducible():
            raise ValueError("defining polynomial is reducible")

    def _is_irreducible(self):
        # x^(p^i) mod defining must avoid fixed fields for proper divisors of degree
        from .poly import Poly  # local import to avoid a cycle

        Fp = GF(self.p)
        m = Poly(Fp, [Fp(c) for c in self.defining])
        x = Poly(Fp, [Fp(0), Fp(1)])
        for i in range(1, self.degree):
            if self.degree % i == 0:
                xq = x.powmod(self.p ** i, m)
                if (xq - x).gcd(m).degree() > 0:
                    return False
        return True

    def _mul(self, a, b):
        p, d = self.p, self.degree
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a.coords):
            if ai:
                for j, bj in enumerate(b.coords):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:d]]
        for k in range(d, 2 * d - 1):
            c = prod[k] % p
            if c:
                row = self._red[k - d]
                for i in range(d):
                    out[i] = (out[i] + c * row[i]) % p
        return ExtElem(self, out)

    def _inverse(self, a):
        # extended Euclid in F_p[t]
        from .poly import Poly

        Fp = GF(self.p)
        m = Poly(Fp, [Fp(c) for c in self.defining])
        ap = Poly(Fp, [Fp(c) for c in a.coords])
        g, s, _ = ap.xgcd(m)
        if g.degree() != 0:
            raise ZeroDivisionError("not invertible")
        s = s * g.coeffs[0].__pow__(-1)
        coords = [0] * self.degree
        for i, c in enumerate(s.coeffs):
            coords[i] = c.value
        return ExtElem(self, coords)

    def __call__(self, v):
        if isinstance(v, ExtElem) and v.field == self:
            return v
        if isinstance(v, (list, tuple)):
            return ExtElem(self, list(v) + [0] * (self.degree - len(v)))
        if isinstance(v, FpElem):
            return self.from_int(v.value)
        if isinstance(v, Fraction):
            return self.from_int(v.numerator * pow(v.denominator, -1, self.p))
        return self.from_int(v)

    def zero(self):
        return ExtElem(self, [0] * self.degree)

    def one(self):
        return ExtElem(self, [1] + [0] * (self.degree - 1))

    def from_int(self, n):
        return ExtElem(self, [n] + [0] * (self.degree - 1))

    def gen(self):
        return ExtElem(self, [0, 1] + [0] * (self.degree - 2))

    def sort_key(self, x):
        return x.coords

    def elements(self):
        p, d = self.p, self.degree
        for n in range(self.order):
            coords = []
            m = n
            for _ in range(d):
                coords.append(m % p)
                m //= p
            yield ExtElem(self, coords)

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.defining == self.defining
        )

    def __hash__(self):
        return hash(("ext", self.p, self.defining))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"


#: Fixed defining polynomials for the extension fields the pipelines use
#: (low-degree-first coefficients; any fixed irreducible would do, this table
#: is recorded in reports for reproducibility).
EXT_DEFINING = {
    (5, 2): (3, 0, 1),        # t^2 + 3
    (5, 3): (1, 1, 0, 1),     # t^3 + t + 1
    (7, 2): (4, 0, 1),        # t^2 + 4
    (7, 3): (5, 0, 0, 1),     # t^3 + 5
}


@lru_cache(maxsize=None)
def GFq(p, k):
    """F_{p^k} with the tabulated defining polynomial (k = 1 gives F_p)."""
    if k == 1:
        return GF(p)
    if (p, k) in EXT_DEFINING:
        return ExtField(p, list(EXT_DEFINING[(p, k)]))
    # fall back to a deterministic search for a monic irreducible
    from .poly import Poly

    Fp = GF(p)
    for n in range(p ** k):
        coeffs = []
        m = n
        for _ in range(k):
            coeffs.append(m % p)
            m //= p
        cand = coeffs + [1]
        try:
            return ExtField(p, cand)
        except ValueError:
            continue
    raise RuntimeError("no irreducible found")  # unreachable


class NfElem:
    """Element of Q[t]/(m), stored as a coordinate tuple of Fractions."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) > field.degree:
            raise ValueError("coordinate length mismatch")
        coords += [Fraction(0)] * (field.degree - len(coords))
        self.field = field
        self.coords = tuple(coords)

    def _coerce(self, other):
        if isinstance(other, NfElem):
            if other.field != self.field:
                raise ValueError("mixed number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return NfElem(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return NfElem(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.field.one()
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        return self.field._inverse(self)

    def __neg__(self):
        return NfElem(self.field, [-a for a in self.coords])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, NfElem)):
            o = self._coerce(other)
            return self.coords == o.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.field.min_coeffs, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return f"Nf{self.coords}"


class NumberField:
    """Q[t]/(m(t)) for a monic irreducible m over Q."""

    char = 0
    order = None

    def __init__(self, min_coeffs, check_irreducible=True):
        """`min_coeffs`: low-degree-first rational coefficients of m, monic."""
        coeffs = [Fraction(c) for c in min_coeffs]
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.min_coeffs = tuple(coeffs)
        self.degree = len(coeffs) - 1
        d = self.degree
        rows = []
        cur = [-c for c in coeffs[:-1]]
        rows.append(list(cur))
        for _ in range(d - 2):
            lead = cur[-1]
            nxt = [Fraction(0)] + cur[:-1]
            nxt = [nxt[i] + lead * rows[0][i] for i in range(d)]
            rows.append(nxt)
            cur = nxt
        self._red = rows
        if check_irreducible and d > 1:
            from .poly import Poly, factor_q

            m = Poly(QQ, list(self.min_coeffs))
            facs = factor_q(m)
            if len(facs) != 1 or facs[0][1] != 1:
                raise ValueError("minimal polynomial is reducible")

    def min_poly(self):
        from .poly import Poly

        return Poly(QQ, list(self.min_coeffs))

    def _mul(self, a, b):
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a.coords):
            if ai:
                for j, bj in enumerate(b.coords):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = self._red[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return NfElem(self, out)

    def _inverse(self, a):
        from .poly import Poly

        if not a:
            raise ZeroDivisionError("zero has no inverse")
        m = self.min_poly()
        ap = Poly(QQ, list(a.coords))
        g, s, _ = ap.xgcd(m)
        if g.degree() != 0:
            raise ZeroDivisionError("non-invertible element (reducible modulus?)")
        s = s * (1 / g.coeffs[0])
        return NfElem(self, list(s.coeffs))

    def __call__(self, v):
        if isinstance(v, NfElem) and v.field == self:
            return v
        if isinstance(v, (list, tuple)):
            return NfElem(self, v)
        if isinstance(v, (int, Fraction)):
            return self.from_rational(Fraction(v))
        raise TypeError(f"cannot coerce {v!r}")

    def zero(self):
        return NfElem(self, [])

    def one(self):
        return NfElem(self, [1])

    def from_int(self, n):
        return NfElem(self, [n])

    def from_rational(self, q):
        return NfElem(self, [q])

    def gen(self):
        return NfElem(self, [0, 1])

    def sort_key(self, x):
        return tuple((c.numerator, c.denominator) for c in x.coords)

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.min_coeffs == self.min_coeffs

    def __hash__(self):
        return hash(("nf", self.min_coeffs))

    def __repr__(self):
        return f"NumberField({list(self.min_coeffs)})"


class QuadElem:
    """Element a + b*sqrt(s) of a quadratic extension of an arbitrary base field."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b):
        self.field = field
        self.a = a
        self.b = b

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise ValueError("mixed quadratic extensions")
            return other
        try:
            return QuadElem(self.field, self.field.base_coerce(other), self.field.base_zero)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        s = self.field.s
        return QuadElem(
            self.field,
            self.a * o.a + self.b * o.b * s,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.field.one()
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.field.s
        if not norm:
            raise ZeroDivisionError("zero divisor (s is a square in the base?)")
        inv = 1 / norm if isinstance(norm, Fraction) else norm ** (-1)
        return QuadElem(self.field, self.a * inv, -self.b * inv)

    def conj(self):
        return QuadElem(self.field, self.a, -self.b)

    def __neg__(self):
        return QuadElem(self.field, -self.a, -self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash(("quad", self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"({self.a!r} + {self.b!r}*rt)"


class QuadExt:
    """K(sqrt(s)) over any coefficient field K; used for pullback towers."""

    order = None

    def __init__(self, base, s):
        self.base = base
        self.char = base.char
        self.s = s
        self.base_zero = base.zero()
        self.degree = 2

    def base_coerce(self, v):
        if isinstance(v, (int, Fraction)):
            if isinstance(self.base, RationalField):
                return Fraction(v)
            return self.base(v)
        if isinstance(v, Fraction):
            return self.base(v)
        # base elements pass through
        return v + self.base_zero

    def __call__(self, v):
        if isinstance(v, QuadElem) and v.field == self:
            return v
        return QuadElem(self, self.base_coerce(v), self.base_zero)

    def zero(self):
        return QuadElem(self, self.base.zero(), self.base.zero())

    def one(self):
        return QuadElem(self, self.base.one(), self.base.zero())

    def from_int(self, n):
        return QuadElem(self, self.base.from_int(n), self.base.zero())

    def gen(self):
        """The adjoined square root of s."""
        return QuadElem(self, self.base.zero(), self.base.one())

    def sort_key(self, x):
        return (self.base.sort_key(x.a), self.base.sort_key(x.b))

    def __eq__(self, other):
        return isinstance(other, QuadExt) and other.base == self.base and other.s == self.s

    def __hash__(self):
        return hash(("quadext", self.base, self.s))

    def __repr__(self):
        return f"QuadExt({self.base!r}, {self.s!r})"


# ---------------------------------------------------------------------------
# square roots and rational reconstruction


def ff_sqrt(x):
    """Square root in F_q (odd q) via Tonelli-Shanks, or None for non-squares.

    Of the two roots, returns the one with lexicographically smaller
    coordinate vector.
    """
    field = x.field
    if field.char == 2:
        raise ValueError("characteristic-2 fields are not supported")
    q = field.order
    if not x:
        return x
    if x ** ((q - 1) // 2) != field.one():
        return None
    # write q - 1 = 2^s * t
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    if s == 1:
        r = x ** ((q + 1) // 4)
    else:
        z = next(e for e in field.elements() if e and e ** ((q - 1) // 2) != field.one())
        c = z ** t
        r = x ** ((t + 1) // 2)
        w = x ** t
        m = s
        one = field.one()
        while w != one:
            i, wi = 0, w
            while wi != one:
                wi = wi * wi
                i += 1
            b = c ** (1 << (m - i - 1))
            r = r * b
            c = b * b
            w = w * c
            m = i
    other = -r
    if field.sort_key(other) < field.sort_key(r):
        r = other
    return r


def ff_is_square(x):
    """Euler-criterion squareness flag in F_q, odd q (0 counts as square)."""
    if not x:
        return True
    return x ** ((x.field.order - 1) // 2) == x.field.one()


def rational_reconstruction(residue, modulus, bound):
    """Recover n/d with |n| <= bound, 0 < d <= bound, n = residue*d mod modulus.

    Returns None when no such fraction exists; the answer is unique whenever
    2*bound^2 < modulus.
    """
    if not 0 <= residue < modulus:
        raise ValueError("residue out of range")
    r0, r1 = modulus, residue
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    n, d = r1, s1
    if d < 0:
        n, d = -n, -d
    if d == 0 or d > bound or abs(n) > bound:
        return None
    if math.gcd(d, modulus) != 1:
        return None
    if (n - residue * d) % modulus != 0:
        return None
    if math.gcd(abs(n), d) != 1:
        return None
    return Fraction(n, d)


class SquareCertificate:
    """Evidence attached to an nf_is_square verdict."""

    def __init__(self, is_square, root=None, kind=None, prime=None,
                 residue_poly=None, residue_point=None):
        self.is_square = is_square
        self.root = root
        self.kind = kind  # "root" | "nonresidue" | "height-bound"
        self.prime = prime
        self.residue_poly = residue_poly      # factor of m mod p cutting the residue field
        self.residue_point = residue_point    # image of the field generator there

    def __repr__(self):
        if self.is_square:
            return f"square(root={self.root!r})"
        return f"nonsquare({self.kind}, p={self.prime})"


def _nf_good_primes(K, x, limit=None):
    """Odd primes where m mod p is squarefree and x is p-integral, ascending."""
    from .poly import Poly

    dens = {c.denominator for c in K.min_coeffs} | {c.denominator for c in x.coords}
    count = 0
    for p in odd_primes():
        if any(d % p == 0 for d in dens):
            continue
        Fp = GF(p)
        try:
            mp = Poly(Fp, [Fp(c) for c in K.min_coeffs])
        except ZeroDivisionError:
            continue
        if mp.degree() != K.degree:
            continue
        if mp.gcd(mp.derivative()).degree() != 0:
            continue
        yield p
        count += 1
        if limit is not None and count >= limit:
            return


def _nf_residue_images(K, x, p):
    """Images of x in the residue fields of the factors of m mod p.

    Returns a list of (factor poly over F_p, residue field, image of t, image of x).
    """
    from .poly import Poly, factor_ff

    Fp = GF(p)
    mp = Poly(Fp, [Fp(c) for c in K.min_coeffs])
    xp = Poly(Fp, [Fp(c) for c in x.coords])
    out = []
    for fac, _mult in factor_ff(mp):
        d = fac.degree()
        if d == 1:
            F = Fp
            root = -fac.coeffs[0]
        else:
            F = ExtField(p, [c.value for c in fac.coeffs])
            root = F.gen()
        img = xp.eval_in(F, root)
        out.append((fac, F, root, img))
    return out


def _nf_height_bound(K, x):
    """Generously padded coordinate-height bound for a putative square root of x.

    Cauchy root bound for m, embedding bound for |sigma(x)|, and a Vandermonde
    adjugate estimate, all in exact rational arithmetic, times a fixed margin.
    """
    from .poly import Poly, resultant

    d = K.degree
    R = 1 + max(abs(c) for c in K.min_coeffs[:-1]) if d > 0 else Fraction(1)
    R = max(R, Fraction(1))
    Mx = sum(abs(c) * R ** i for i, c in enumerate(x.coords))
    m = K.min_poly()
    disc = abs(resultant(m, m.derivative()))
    if disc == 0:
        raise ValueError("minimal polynomial not squarefree")
    A = Fraction(math.factorial(max(d - 1, 1))) * R ** (d * max(d - 1, 1))
    # |y_i| <= d * A * (1 + sqrt(Mx)) / sqrt(disc); use integer sqrt bounds
    sqrt_mx = math.isqrt(int(Mx)) + 1
    sqrt_disc = max(math.isqrt(disc.numerator // max(disc.denominator, 1)), 1)
    num_bound = int(d * A * (1 + sqrt_mx)) // sqrt_disc + 1
    den_bound = int(disc.numerator) * math.lcm(*(c.denominator for c in x.coords))
    return max(num_bound, den_bound) << 20


def _nf_sqrt_at_prime(K, x, p, height_bound):
    """Hensel lift + rational reconstruction of sqrt(x) at one good prime.

    Returns an exact root, None if no sign combination reconstructs below the
    bound, or False when a residue image is a non-residue (proving x is not a
    square).
    """
    from .poly import Poly

    images = _nf_residue_images(K, x, p)
    roots = []
    for fac, F, _root, img in images:
        if not img:
            return None  # ramified-for-x prime: skip rather than reason about it
        r = ff_sqrt(img)
        if r is None:
            return False
        roots.append((fac, F, r))
    # CRT the residue square roots into F_p[t]/(m), one choice of signs at a time
    Fp = GF(p)
    mp = Poly(Fp, [Fp(c) for c in K.min_coeffs])
    n = len(roots)
    d = K.degree
    xint = [c for c in x.coords]

    for signs in range(1 << max(n - 1, 0)):
        parts = []
        for idx, (fac, F, r) in enumerate(roots):
            sgn = 1 if idx == 0 or not (signs >> (idx - 1)) & 1 else -1
            ri = r if sgn == 1 else -r
            if isinstance(F, PrimeField):
                rp = Poly(Fp, [ri])
            else:
                rp = Poly(Fp, [Fp(c) for c in ri.coords])
            parts.append((fac, rp))
        # polynomial CRT mod the factors of m
        s = Poly(Fp, [])
        for fac, rp in parts:
            others = mp // fac
            inv = others.invmod(fac)
            s = s + rp * inv * others
        s = s % mp
        root = _hensel_sqrt_lift(K, xint, [c.value for c in s.coeffs], p, height_bound)
        if root is not None:
            return root
    return None


def _hensel_sqrt_lift(K, x_coords, s_coords, p, height_bound):
    """Newton-lift s (s^2 = x mod (p, m)) to p^k, reconstructing coordinates."""
    d = K.degree
    mint = [c for c in K.min_coeffs]

    def polmulmod(a, b, pk):
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = (prod[i + j] + ai * bj) % pk
        # reduce modulo m (monic, possibly rational coefficients made integral mod pk)
        mred = [int(Fraction(c).numerator * pow(Fraction(c).denominator, -1, pk)) % pk
                for c in mint]
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % pk
            if c:
                prod[k] = 0
                for i in range(d + 1):
                    prod[k - d + i] = (prod[k - d + i] - c * mred[i]) % pk
        return [c % pk for c in prod[:d]]

    def x_mod(pk):
        return [int(c.numerator * pow(c.denominator, -1, pk)) % pk for c in x_coords]

    s = [c % p for c in s_coords] + [0] * (d - len(s_coords))
    # inverse of 2s mod (p, m)
    from .poly import Poly

    Fp = GF(p)
    mp = Poly(Fp, [Fp(c) for c in K.min_coeffs])
    twos = Poly(Fp, [Fp(2 * c) for c in s])
    try:
        z = twos.invmod(mp)
    except ZeroDivisionError:
        return None
    z = [c.value for c in z.coeffs] + [0] * (d - z.degree() - 1)

    e = 1
    pk = p
    limit = 2 * height_bound * height_bound
    while True:
        e2 = 2 * e
        pk2 = p ** e2
        xm = x_mod(pk2)
        # refine inverse of 2s, then the root
        twos_c = [(2 * c) % pk2 for c in s]
        prod = polmulmod(twos_c, z, pk2)
        corr = [(-c) % pk2 for c in prod]
        corr[0] = (corr[0] + 2) % pk2
        z = polmulmod(z, corr, pk2)
        s2 = polmulmod(s, s, pk2)
        diff = [(a - b) % pk2 for a, b in zip(s2, xm)]
        delta = polmulmod(diff, z, pk2)
        s = [(a - b) % pk2 for a, b in zip(s, delta)]
        e, pk = e2, pk2
        if pk > limit:
            coords = []
            ok = True
            for c in s:
                rec = rational_reconstruction(c % pk, pk, height_bound)
                if rec is None:
                    ok = False
                    break
                coords.append(rec)
            if ok:
                cand = NfElem(K, coords)
                if cand * cand == NfElem(K, list(x_coords)):
                    return nf_canonical_sign(cand)
            return None


def nf_canonical_sign(x):
    """Of x and -x, the one whose first nonzero coordinate is positive."""
    for c in x.coords:
        if c:
            return -x if c < 0 else x
    return x


def nf_is_square(x, scan_primes=25):
    """Decide squareness of a number-field element, with a certificate.

    Positive answers carry an exact square root; negative answers carry either
    a quadratic non-residue certificate at a good prime or (fallback) the
    height-bound exhaustion marker.
    """
    K = x.field
    if not x:
        return SquareCertificate(True, root=K.zero(), kind="root")
    # cheap negative certificates first
    for p in _nf_good_primes(K, x, limit=scan_primes):
        for fac, _F, root, img in _nf_residue_images(K, x, p):
            if img and not ff_is_square(img):
                return SquareCertificate(
                    False, kind="nonresidue", prime=p,
                    residue_poly=tuple(c.value for c in fac.coeffs),
                    residue_point=root.value if isinstance(root, FpElem) else root.coords,
                )
    height_bound = _nf_height_bound(K, x)
    tried = 0
    last_prime = None
    for p in _nf_good_primes(K, x, limit=scan_primes):
        last_prime = p
        res = _nf_sqrt_at_prime(K, x, p, height_bound)
        if res is False:
            # recover the exact non-residue data for the certificate
            for fac, F, root, img in _nf_residue_images(K, x, p):
                if img and not ff_is_square(img):
                    return SquareCertificate(
                        False, kind="nonresidue", prime=p,
                        residue_poly=tuple(c.value for c in fac.coeffs),
                        residue_point=root.value if isinstance(root, FpElem) else root.coords,
                    )
        elif res is not None:
            return SquareCertificate(True, root=res, kind="root")
        else:
            tried += 1
            if tried >= 3:
                break
    return SquareCertificate(False, kind="height-bound", prime=last_prime)


def nf_sqrt(x):
    """Exact square root of a number-field element, or None."""
    cert = nf_is_square(x)
    return cert.root if cert.is_square else None
