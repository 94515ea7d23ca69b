import random
from fractions import Fraction

import pytest

from fivesquares.fields import (
    GF,
    GFq,
    QQ,
    NumberField,
    QuadExt,
    ff_is_square,
    ff_sqrt,
    is_prime,
    nf_canonical_sign,
    nf_is_square,
    nf_sqrt,
    odd_primes,
)


def test_primes():
    assert [p for p in (2, 3, 5, 7, 11, 97)] == [p for p in (2, 3, 5, 7, 11, 97)
                                                 if is_prime(p)]
    assert not any(is_prime(n) for n in (0, 1, 4, 9, 91, 100))
    gen = odd_primes()
    assert [next(gen) for _ in range(5)] == [3, 5, 7, 11, 13]


def test_rational_field():
    assert QQ.zero() == 0 and QQ.one() == 1
    assert QQ.from_int(-7) == Fraction(-7)
    assert QQ(Fraction(2, 4)) == Fraction(1, 2)


def test_gf_axioms():
    rng = random.Random(1)
    F = GF(11)
    elems = list(F.elements())
    assert len(elems) == 11
    for _ in range(300):
        a, b, c = (F.from_int(rng.randrange(11)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        if b:
            assert b * (a / b) == a
    with pytest.raises((ZeroDivisionError, ValueError)):
        F.one() / F.zero()


def test_gfq():
    F = GFq(5, 2)
    assert F.order == 25
    assert len(list(F.elements())) == 25
    g = F.gen()
    # the generator is not in the prime field
    assert all(g != F.from_int(n) for n in range(5))
    assert g ** 24 == F.one()
    assert GFq(7, 1) == GF(7)


def test_ff_sqrt_exhaustive():
    for field in (GF(5), GF(7), GF(13), GFq(3, 2)):
        squares = 0
        for x in field.elements():
            r = ff_sqrt(x)
            if r is not None:
                assert r * r == x
                squares += 1
            assert ff_is_square(x) == (r is not None)
        # (q - 1)/2 nonzero squares plus zero
        assert squares == (field.order - 1) // 2 + 1


def test_number_field_basics():
    K = NumberField([Fraction(-2), Fraction(0), Fraction(0), Fraction(1)])  # x^3 - 2
    g = K.gen()
    assert g ** 3 == K.from_int(2)
    x = K.one() + g
    assert x * x.inverse() == K.one()
    assert (x - x) == K.zero()


def test_nf_sqrt_canonical():
    K = NumberField([Fraction(-2), Fraction(0), Fraction(0), Fraction(1)])
    nine = K.from_int(9)
    assert nf_sqrt(nine) == K.from_int(3)
    g = K.gen()
    x = (K.one() + g) * (K.one() + g)
    r = nf_sqrt(x)
    assert r is not None and r * r == x
    assert r == nf_canonical_sign(r)
    cert = nf_is_square(g)
    assert not cert.is_square
    assert nf_sqrt(g) is None


def test_quad_ext():
    K = NumberField([Fraction(-2), Fraction(0), Fraction(0), Fraction(1)])
    L = QuadExt(K, K.from_int(3))  # sqrt(3) over Q(2^(1/3))
    s = L.gen()
    assert s * s == L.base_coerce(K.from_int(3))
    x = L.one() + s
    assert x * x.inverse() == L.one()
    assert (x + x) - x == x
    assert x ** 3 == x * x * x
