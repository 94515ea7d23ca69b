"""Randomized property suites shared by the unit tests and the acceptance
gate.  Everything is exact arithmetic, so the tolerance is zero; the RNG is
seeded for reproducibility."""

import random
from fractions import Fraction

from fivesquares.divisors import (
    INF_MINUS_PLACE,
    INF_PLUS_PLACE,
    CurveFunction,
    Divisor,
    divisor_of_function,
    places_over,
)
from fivesquares.fields import GF, GFq, ff_sqrt
from fivesquares.jacobian import DivisorClass, class_add, class_neg
from fivesquares.poly import Poly, factor_ff
from fivesquares.riemann_roch import ell

SEED = 0x5A95

#: canonical class of the genus-3 split model: div(dx/y) = 2*inf+ + 2*inf-
CANONICAL = Divisor({INF_PLUS_PLACE: 2, INF_MINUS_PLACE: 2})


def _place_pool(curve):
    """A pool of rational places of small degree on the paper curve."""
    pool = [INF_PLUS_PLACE, INF_MINUS_PLACE]
    xs = [Fraction(v) for v in (0, 1, -1, 2, -2, 3, Fraction(1, 2))]
    for a in xs:
        u = Poly(curve.field, [-a, curve.field.one()])
        for pl, _ in places_over(u, curve):
            pool.append(pl)
    for c0, c1 in ((1, 0), (2, 0), (1, 1), (3, 1), (5, -1)):
        u = Poly(curve.field, [Fraction(c0), Fraction(c1), Fraction(1)])
        for pl, _ in places_over(u, curve):
            pool.append(pl)
    return pool


def riemann_roch_identity(curve, samples=200, seed=SEED):
    """l(D) - l(K - D) = deg D - g + 1 on random divisors; returns samples."""
    rng = random.Random(seed)
    pool = _place_pool(curve)
    g = curve.genus
    checked = 0
    for _ in range(samples):
        D = Divisor()
        for _ in range(rng.randrange(1, 4)):
            pl = rng.choice(pool)
            m = rng.choice([-2, -1, 1, 1, 2])
            D = D + Divisor({pl: m})
        if abs(D.degree()) > 6:
            D = D + Divisor({INF_MINUS_PLACE: -D.degree()})
        lhs = ell(D, curve) - ell(CANONICAL - D, curve)
        rhs = D.degree() - g + 1
        assert lhs == rhs, f"RR identity fails on {D!r}: {lhs} != {rhs}"
        checked += 1
    return checked


def group_axioms(curve, table, samples=500, seed=SEED):
    """Associativity, commutativity, identity, inverses on random triples."""
    rng = random.Random(seed)
    classes = list(table.values())
    zero = DivisorClass.zero(curve)
    checked = 0
    for _ in range(samples):
        A, B, C = (rng.choice(classes) for _ in range(3))
        AB = class_add(A, B)
        assert AB == class_add(B, A)
        assert class_add(AB, C) == class_add(A, class_add(B, C))
        assert class_add(A, zero) == A
        assert class_add(A, class_neg(A)) == zero
        checked += 1
    return checked


def factor_sqrt_round_trips(samples=1000, seed=SEED):
    """Finite-field factorization and square-root round trips."""
    rng = random.Random(seed)
    fields = [GF(p) for p in (3, 5, 7, 11, 13, 17)] + [GFq(3, 2), GFq(5, 2)]
    checked = 0
    for _ in range(samples):
        field = rng.choice(fields)
        if rng.random() < 0.5:
            # factorization round trip
            deg = rng.randrange(1, 6)
            coeffs = [field.from_int(rng.randrange(field.order))
                      for _ in range(deg)] + [field.one()]
            a = Poly(field, coeffs)
            if a.degree() < 1:
                continue
            prod = Poly(field, [a.lc()])
            for irr, mult in factor_ff(a):
                assert irr.lc() == field.one()
                prod = prod * irr ** mult
            assert prod == a, f"factor product mismatch over {field!r}"
        else:
            # square-root round trip
            x = field.from_int(rng.randrange(field.order))
            sq = x * x
            r = ff_sqrt(sq)
            assert r is not None and r * r == sq
        checked += 1
    return checked


def function_divisor_degrees(curve, samples=120, seed=SEED):
    """div(fn) has degree 0 for random nonzero functions on the curve."""
    rng = random.Random(seed)
    field = curve.field
    checked = 0
    while checked < samples:
        a = Poly(field, [Fraction(rng.randrange(-4, 5))
                         for _ in range(rng.randrange(1, 5))])
        b = Poly(field, [Fraction(rng.randrange(-3, 4))
                         for _ in range(rng.randrange(0, 3))])
        c = Poly(field, [Fraction(rng.choice([1, 2, -1])),
                         Fraction(rng.randrange(0, 3)), Fraction(1)])
        if a.is_zero() and b.is_zero():
            continue
        fn = CurveFunction(a, b, c)
        D = divisor_of_function(fn, curve)
        assert D.degree() == 0, f"div({fn!r}) has degree {D.degree()}"
        checked += 1
    return checked
