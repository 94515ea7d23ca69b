"""Dense univariate polynomials over any coefficient field.

Coefficients are stored low-degree first; the zero polynomial is the empty
tuple.  Includes gcd/resultant machinery, factorization over F_{p^k}
(squarefree / distinct-degree / equal-degree splitting) and over Q
(reduction mod a good prime, Hensel lifting, subset recombination).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .fields import QQ, GF, ExtField, FpElem, RationalField, is_prime

#: seed for the deterministic pseudorandomness in equal-degree splitting
DEFAULT_SEED = 0x5A95


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        while coeffs and not coeffs[-1]:
            coeffs = coeffs[:-1]
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(n) for n in ints])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero(), field.one()])

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly(self.field, [self._coerce_scalar(other)])

    def _coerce_scalar(self, c):
        if isinstance(c, int):
            return self.field.from_int(c)
        if isinstance(c, Fraction) and isinstance(self.field, RationalField):
            return c
        return c

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self._coerce_scalar(other)
            return Poly(self.field, [a * c for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field, [])
        out = [self.field.zero()] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = out[i + j] + ai * bj
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree()
        inv_lc = self.field.one() / other.lc()
        quot = [self.field.zero()] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                q = c * inv_lc
                quot[i - db] = q
                for j, oc in enumerate(other.coeffs):
                    rem[i - db + j] = rem[i - db + j] - q * oc
        return Poly(self.field, quot), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        result = Poly(self.field, [self.field.one()])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def powmod(self, n, modulus):
        result = Poly(self.field, [self.field.one()]) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def monic(self):
        if self.is_zero():
            return self
        inv = self.field.one() / self.lc()
        return self * inv

    def derivative(self):
        return Poly(self.field, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def gcd(self, other):
        """Monic gcd; gcd(0, 0) = 0."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, s, t) with s*self + t*other = g (g not normalized)."""
        zero = Poly(self.field, [])
        one = Poly(self.field, [self.field.one()])
        r0, r1 = self, other
        s0, s1 = one, zero
        t0, t1 = zero, one
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        return r0, s0, t0

    def invmod(self, modulus):
        g, s, _ = self.xgcd(modulus)
        if g.degree() != 0:
            raise ZeroDivisionError("not invertible modulo the given polynomial")
        return (s * (self.field.one() / g.coeffs[0])) % modulus

    def evaluate(self, x):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_in(self, target_field, x):
        """Evaluate at x after mapping coefficients into target_field."""
        acc = target_field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + target_field(c)
        return acc

    def map_coeffs(self, target_field):
        return Poly(target_field, [target_field(c) for c in self.coeffs])

    def shift_x(self):
        """Multiply by x."""
        if self.is_zero():
            return self
        return Poly(self.field, [self.field.zero(), *self.coeffs])

    def sort_key(self):
        return (self.degree(), tuple(self.field.sort_key(c) for c in self.coeffs))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({render_poly(self)})"


def render_poly(p, var="x"):
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree(), -1, -1):
        c = p[i]
        if not c:
            continue
        if i == 0:
            terms.append(f"{c}")
        elif i == 1:
            terms.append(f"{c}*{var}" if c != p.field.one() else var)
        else:
            terms.append(f"{c}*{var}^{i}" if c != p.field.one() else f"{var}^{i}")
    return " + ".join(terms).replace("+ -", "- ")


def poly_gcd(a, b):
    return a.gcd(b)


# ---------------------------------------------------------------------------
# resultants


def resultant(a, b):
    """res(a, b) = lc(a)^deg(b) * prod b(alpha_i) over the roots of a."""
    field = a.field
    if a.is_zero() or b.is_zero():
        return field.zero()
    if a.degree() == 0:
        return a.coeffs[0] ** b.degree()
    if b.degree() == 0:
        return b.coeffs[0] ** a.degree()
    r = b % a
    if r.is_zero():
        return field.zero()
    da, db, dr = a.degree(), b.degree(), r.degree()
    # res(a, b) = lc(a)^(db-dr) * res(a, r) and res(a, r) = (-1)^(da*dr) res(r, a)
    sign = field.from_int(-1) ** (da * dr)
    return sign * a.lc() ** (db - dr) * resultant(r, a)


# ---------------------------------------------------------------------------
# squarefree decomposition


def squarefree_decomposition(a):
    """Yun's algorithm (characteristic 0) / char-p variant: [(g_i, i)] with
    a = lc * prod g_i^i, each g_i squarefree, pairwise coprime."""
    field = a.field
    lc = a.lc()
    a = a.monic()
    p = field.char
    out = []
    if p == 0:
        d = a.derivative()
        g = a.gcd(d)
        w = a // g
        i = 1
        while w.degree() > 0:
            y = w.gcd(g)
            fac = w // y
            if fac.degree() > 0:
                out.append((fac, i))
            w, g = y, g // y
            i += 1
        if g.degree() > 0:
            raise AssertionError("leftover factor in characteristic 0")
        return lc, out
    # characteristic p
    d = a.derivative()
    if d.is_zero():
        root = _pth_root_poly(a)
        inner_lc, inner = squarefree_decomposition(root)
        return lc, [(g, i * p) for g, i in inner]
    g = a.gcd(d)
    w = a // g
    i = 1
    while w.degree() > 0:
        y = w.gcd(g)
        fac = w // y
        if fac.degree() > 0:
            out.append((fac, i))
        w, g = y, g // y
        i += 1
    if g.degree() > 0:
        root = _pth_root_poly(g)
        _lc2, inner = squarefree_decomposition(root)
        merged = {fac: mult for fac, mult in out}
        for fac, mult in inner:
            for existing in list(merged):
                common = fac.gcd(existing)
                if common.degree() > 0 and common.degree() < fac.degree():
                    raise AssertionError("unexpected overlap in squarefree split")
            merged[fac] = merged.get(fac, 0) + mult * p
        out = sorted(merged.items(), key=lambda t: (t[1], t[0].sort_key()))
    return lc, out


def _pth_root_poly(a):
    """For a(x) = b(x^p) over F_q, return b with b^p... (coefficient p-th roots)."""
    field = a.field
    p = field.char
    q = field.order
    coeffs = []
    for i in range(0, a.degree() + 1, p):
        c = a[i]
        coeffs.append(c ** (q // p))
    return Poly(field, coeffs)


# ---------------------------------------------------------------------------
# factorization over finite fields


def factor_ff(a, seed=None):
    """Irreducible factorization over F_{p^k}: [(monic irreducible, mult)],
    ordered by (degree, lexicographic coefficients)."""
    if seed is None:
        seed = DEFAULT_SEED
    if a.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    field = a.field
    if a.degree() == 0:
        return []
    rng = random.Random(seed)
    lc, sqfree = squarefree_decomposition(a)
    out = []
    for part, mult in sqfree:
        for irr in _factor_squarefree_ff(part, rng):
            out.append((irr, mult))
    out.sort(key=lambda t: t[0].sort_key())
    return out


def _factor_squarefree_ff(a, rng):
    field = a.field
    q = field.order
    x = Poly.x(field)
    out = []
    v = a.monic()
    h = x
    d = 0
    while v.degree() > 0:
        d += 1
        if 2 * d > v.degree():
            out.append(v)
            break
        h = h.powmod(q, v)
        g = (h - x).gcd(v)
        if g.degree() > 0:
            out.extend(_equal_degree_split(g, d, rng))
            v = v // g
            h = h % v
    return out


def _random_ff_elem(field, rng):
    """A uniformly random element; from_int alone would only reach the prime
    subfield of an extension, and prime-subfield test polynomials commute with
    Frobenius and can never separate conjugate factors."""
    if field.degree == 1:
        return field.from_int(rng.randrange(field.p))
    acc = field.zero()
    pw = field.one()
    g = field.gen()
    for _ in range(field.degree):
        acc = acc + pw * field.from_int(rng.randrange(field.p))
        pw = pw * g
    return acc


def _equal_degree_split(a, d, rng):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles, odd q."""
    field = a.field
    q = field.order
    if a.degree() == d:
        return [a.monic()]
    while True:
        r = Poly(field, [_random_ff_elem(field, rng) for _ in range(a.degree())])
        if r.degree() < 1:
            continue
        g = r.gcd(a)
        if 0 < g.degree() < a.degree():
            pass
        else:
            t = r.powmod((q ** d - 1) // 2, a) - Poly.const(field, field.one())
            g = t.gcd(a)
            if not 0 < g.degree() < a.degree():
                continue
        left = _equal_degree_split(g, d, rng)
        right = _equal_degree_split(a // g, d, rng)
        return left + right


def ff_roots(a):
    """Roots of a in its (finite) coefficient field."""
    field = a.field
    x = Poly.x(field)
    xq = x.powmod(field.order, a)
    lin = (xq - x).gcd(a)
    roots = []
    for fac, _ in factor_ff(lin):
        if fac.degree() == 1:
            roots.append(-fac.coeffs[0])
    roots.sort(key=field.sort_key)
    return roots


# ---------------------------------------------------------------------------
# factorization over Q (Zassenhaus)


def _clear_denominators(a):
    """(integer coefficient list, scale) with a * scale integral."""
    den = math.lcm(*(c.denominator for c in a.coeffs))
    ints = [int(c * den) for c in a.coeffs]
    return ints, den


def _content(ints):
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    return g or 1


def _mignotte_bound(ints):
    n = len(ints) - 1
    norm = math.isqrt(sum(c * c for c in ints)) + 1
    return (2 ** n) * norm * max(abs(ints[-1]), 1)


def _hensel_lift_pair(f_ints, g, h, p, target_k):
    """Lift f = g*h (mod p) to mod p^target_k; g, h int coefficient lists, g monic-led."""

    def pmul(a, b, m):
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % m
        while out and out[-1] % m == 0:
            out.pop()
        return [c % m for c in out]

    def psub(a, b, m):
        out = list(a) + [0] * (len(b) - len(a))
        for i, c in enumerate(b):
            out[i] = (out[i] - c) % m
        while out and out[-1] % m == 0:
            out.pop()
        return out

    def pdivmod(a, b, m):
        # b must have a unit leading coefficient mod m
        a = list(a)
        db = len(b) - 1
        inv = pow(b[-1], -1, m)
        q = [0] * max(len(a) - db, 0)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] % m
            if c:
                qq = c * inv % m
                q[i - db] = qq
                for j, bc in enumerate(b):
                    a[i - db + j] = (a[i - db + j] - qq * bc) % m
        while a and a[-1] % m == 0:
            a.pop()
        return q, a

    # Bezout: s*g + t*h = 1 mod p
    Fp = GF(p)
    gp = Poly.from_ints(Fp, g)
    hp = Poly.from_ints(Fp, h)
    gg, ss, tt = gp.xgcd(hp)
    inv = pow(gg.coeffs[0].value, -1, p)
    s = [c.value * inv % p for c in ss.coeffs]
    t = [c.value * inv % p for c in tt.coeffs]

    k = 1
    g, h = [c % p for c in g], [c % p for c in h]
    while k < target_k:
        k2 = min(2 * k, target_k)
        m2 = p ** k2
        f_red = [c % m2 for c in f_ints]
        # e = f - g*h; with s*g + t*h = 1 one has e = g*(e*s mod h ...) split below
        e = psub(f_red, pmul(g, h, m2), m2)
        es = pmul(e, s, m2)
        q, r = pdivmod(es, h, m2)
        # g*r + h*(e*t + q*g) = e, so update g by e*t + q*g and h by r
        dg = _padd(pmul(e, t, m2), pmul(q, g, m2), m2)
        g = _padd(g, dg, m2)
        h = _padd(h, r, m2)
        # lift the Bezout pair to mod m2
        err = psub([1], _padd(pmul(s, g, m2), pmul(t, h, m2), m2), m2)
        es2 = pmul(err, s, m2)
        q2, r2 = pdivmod(es2, h, m2)
        s = _padd(s, r2, m2)
        dt = _padd(pmul(err, t, m2), pmul(q2, g, m2), m2)
        t = _padd(t, dt, m2)
        k = k2
    return g, h


def _padd(a, b, m):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    while out and out[-1] % m == 0:
        out.pop()
    return out


def _hensel_lift_list(f_ints, factors, p, k):
    """Lift a list of pairwise-coprime monic factors of f mod p to mod p^k."""
    if len(factors) == 1:
        m = p ** k
        lead_inv = pow(f_ints[-1], -1, m)
        return [[c * lead_inv % m for c in f_ints]]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]

    def mulmod(fs, m):
        out = [1]
        for fac in fs:
            nxt = [0] * (len(out) + len(fac) - 1)
            for i, a in enumerate(out):
                for j, b in enumerate(fac):
                    nxt[i + j] = (nxt[i + j] + a * b) % m
            out = nxt
        return out

    g0 = mulmod(left, p)
    h0 = mulmod(right, p)
    # normalize so that g*h = f/lc mod p with both monic
    m = p ** k
    lead_inv = pow(f_ints[-1], -1, m)
    f_monic = [c * lead_inv % m for c in f_ints]
    g, h = _hensel_lift_pair(f_monic, g0, h0, p, k)
    return _hensel_lift_list(g, left, p, k) + _hensel_lift_list(h, right, p, k)


def factor_q(a, seed=None):
    """Irreducible factorization over Q: [(primitive integral irreducible Poly, mult)],
    deterministic order; product of factors times a rational constant equals a."""
    if seed is None:
        seed = DEFAULT_SEED
    if a.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if a.degree() == 0:
        return []
    _lc, sqfree = squarefree_decomposition(a)
    out = []
    for part, mult in sqfree:
        for irr in _factor_squarefree_q(part, seed):
            out.append((irr, mult))
    out.sort(key=lambda t: t[0].sort_key())
    return out


def _factor_squarefree_q(a, seed):
    """Factor a squarefree monic rational polynomial; returns primitive integral factors."""
    ints, _den = _clear_denominators(a)
    cont = _content(ints)
    ints = [c // cont for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    n = len(ints) - 1
    if n == 1:
        return [Poly(QQ, [Fraction(c) for c in ints])]
    # choose a good prime
    p = None
    cand = 3
    while True:
        if is_prime(cand) and ints[-1] % cand != 0:
            Fp = GF(cand)
            fp = Poly.from_ints(Fp, ints)
            if fp.degree() == n and fp.gcd(fp.derivative()).degree() == 0:
                p = cand
                break
        cand += 2
    Fp = GF(p)
    fp = Poly.from_ints(Fp, ints)
    modular = [fac for fac, _ in factor_ff(fp.monic(), seed=seed)]
    if len(modular) == 1:
        return [Poly(QQ, [Fraction(c) for c in ints])]
    bound = _mignotte_bound(ints)
    k = 1
    while p ** k <= 2 * bound * ints[-1] ** 2 + 1:
        k += 1
    mod = p ** k
    lifted = _hensel_lift_list(ints, [[c.value for c in f.coeffs] for f in modular], p, k)
    # subset recombination
    lead = ints[-1]
    remaining = list(range(len(lifted)))
    current = ints
    found = []

    def sym(c, m):
        c %= m
        return c - m if c > m // 2 else c

    size = 1
    import itertools

    while 2 * size <= len(remaining):
        hit = False
        for combo in itertools.combinations(remaining, size):
            prod = [lead % mod]
            for idx in combo:
                fac = lifted[idx]
                nxt = [0] * (len(prod) + len(fac) - 1)
                for i, x in enumerate(prod):
                    for j, y in enumerate(fac):
                        nxt[i + j] = (nxt[i + j] + x * y) % mod
                prod = nxt
            cand = [sym(c, mod) for c in prod]
            ccont = _content(cand)
            cand = [c // ccont for c in cand]
            if cand[-1] < 0:
                cand = [-c for c in cand]
            cp = Poly(QQ, [Fraction(c) for c in cand])
            cur = Poly(QQ, [Fraction(c) for c in current])
            q, r = divmod(cur, cp)
            if r.is_zero():
                found.append(cp)
                current, _d = _clear_denominators(q)
                cc = _content(current)
                current = [c // cc for c in current]
                if current[-1] < 0:
                    current = [-c for c in current]
                remaining = [i for i in remaining if i not in combo]
                lead = current[-1]
                hit = True
                break
        if not hit:
            size += 1
    if len(current) > 1:
        found.append(Poly(QQ, [Fraction(c) for c in current]))
    return found


def q_roots(a):
    """Rational roots of a polynomial over Q."""
    roots = []
    for fac, _ in factor_q(a):
        if fac.degree() == 1:
            roots.append(-fac.coeffs[0] / fac.coeffs[1])
    roots.sort()
    return roots


def is_irreducible_q(a):
    facs = factor_q(a)
    return len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree() == a.degree()


# ---------------------------------------------------------------------------
# minimal polynomials and power series


def minpoly_of(x, field):
    """Monic minimal polynomial over the prime field / Q of an element of
    an ExtField or NumberField, by kernel computation on powers of x."""
    base = QQ if field.char == 0 else GF(field.char)
    if isinstance(field, RationalField):
        return Poly(QQ, [-Fraction(x), Fraction(1)])
    if hasattr(field, "p") and not hasattr(field, "defining") and field.degree == 1:
        return Poly(base, [-x, base.one()])
    d = field.degree
    powers = [field.one()]
    for _ in range(d):
        powers.append(powers[-1] * x)
    rows = [list(pw.coords) for pw in powers]
    for e in range(1, d + 1):
        sol = _solve_dependency(rows[: e + 1], base, d)
        if sol is not None:
            # sol has leading coefficient 1 by construction
            return Poly(base, [_as_base(c, base) for c in sol])
    raise AssertionError("no dependency found up to field degree")


def minpoly_nf(x):
    """Monic minimal polynomial over Q of a number-field element."""
    return minpoly_of(x, x.field)


def _solve_dependency(rows, base, width):
    """Nonzero rational/field vector c with sum c_i rows_i = 0 and c_last != 0."""
    n = len(rows)
    # solve the homogeneous system: unknowns c_0..c_{n-1}; force c_{n-1} = 1
    mat = []
    for j in range(width):
        mat.append([_as_base(rows[i][j] if j < len(rows[i]) else 0, base) for i in range(n - 1)]
                   + [_as_base(-(rows[n - 1][j] if j < len(rows[n - 1]) else 0), base)])
    sol = solve_linear(mat, base, n - 1)
    if sol is None:
        return None
    return sol + [base.one() if base is not QQ else Fraction(1)]


def _as_base(v, base):
    if base is QQ or isinstance(base, RationalField):
        return Fraction(v) if isinstance(v, (int, Fraction)) else v
    if isinstance(v, int):
        return base.from_int(v)
    return v


def solve_linear(aug_rows, field, n_unknowns):
    """Solve the system given as augmented rows [a_1..a_n | b]; None if inconsistent.

    Free variables are set to zero.
    """
    rows = [list(r) for r in aug_rows]
    m = len(rows)
    pivots = []
    r = 0
    for col in range(n_unknowns):
        piv = None
        for i in range(r, m):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = (field.one() if not isinstance(field, RationalField) else Fraction(1)) / rows[r][col]
        rows[r] = [c * inv for c in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][-1]:
            return None
    zero = field.zero() if not isinstance(field, RationalField) else Fraction(0)
    sol = [zero] * n_unknowns
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    return sol


def kernel_basis(rows, field, n_unknowns):
    """Basis of the kernel of the matrix with the given rows (each length n_unknowns)."""
    mat = [list(r) for r in rows]
    m = len(mat)
    one = field.one()
    pivots = []
    r = 0
    for col in range(n_unknowns):
        piv = None
        for i in range(r, m):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = one / mat[r][col]
        mat[r] = [c * inv for c in mat[r]]
        for i in range(m):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    free = [c for c in range(n_unknowns) if c not in pivots]
    basis = []
    zero = field.zero()
    for fc in free:
        vec = [zero] * n_unknowns
        vec[fc] = one
        for i, col in enumerate(pivots):
            vec[col] = -mat[i][fc]
        basis.append(vec)
    return basis


def sqrt_series(coeffs, field, terms):
    """Power-series square root of 1 + c_1 w + ... (constant term must be 1)."""
    one = field.one()
    if coeffs[0] != one:
        raise ValueError("series sqrt needs constant term 1")
    two_inv = one / field.from_int(2)
    s = [one]
    for i in range(1, terms):
        acc = coeffs[i] if i < len(coeffs) else field.zero()
        for j in range(1, i):
            acc = acc - s[j] * s[i - j]
        s.append(acc * two_inv)
    return s
