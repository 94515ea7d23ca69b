from fractions import Fraction

import pytest

import props
from fivesquares.divisors import (
    INF_MINUS_PLACE,
    INF_PLUS_PLACE,
    CurveFunction,
    Divisor,
    Place,
    divisor_of_function,
    involution,
    is_irreducible_degree3,
    parse_divisor,
    place_from_point,
    places_over,
    render_divisor,
)
from fivesquares.fields import QQ, NumberField
from fivesquares.poly import Poly


def P(*coeffs):
    return Poly(QQ, [Fraction(c) for c in coeffs])


def test_place_kinds(curve):
    # x = 0: f(0) = 1 square -> split pair
    pls = places_over(P(0, 1), curve)
    assert len(pls) == 2
    assert {pl.v.coeffs[0] for pl, _ in pls} == {Fraction(1), Fraction(-1)}
    # x = 2: f(2) = 481 is not a square -> inert
    pls = places_over(P(-2, 1), curve)
    assert len(pls) == 1 and pls[0][0].v is None and pls[0][1] == 1
    # x^2 + 1: f(i) = 16 -> split pair of degree-2 places
    pls = places_over(P(1, 0, 1), curve)
    assert len(pls) == 2 and all(pl.degree == 2 for pl, _ in pls)


def test_involution(curve):
    pls = places_over(P(0, 1), curve)
    p1, p2 = pls[0][0], pls[1][0]
    assert p1.conjugate() == p2
    D = Divisor({p1: 2, INF_PLUS_PLACE: 1})
    assert involution(D) == Divisor({p2: 2, INF_MINUS_PLACE: 1})
    assert involution(involution(D)) == D


def test_divisor_arithmetic():
    D = Divisor({INF_PLUS_PLACE: 2, INF_MINUS_PLACE: -1})
    assert D.degree() == 1
    assert (D + D).degree() == 2
    assert (-D).degree() == -1
    assert (D - D).is_zero()
    assert not D.is_effective()
    assert Divisor({INF_PLUS_PLACE: 3}).is_effective()


def test_render_parse_round_trip(curve):
    pls = places_over(P(1, 0, 1), curve)
    D = Divisor({pls[0][0]: 2, INF_MINUS_PLACE: -3})
    text = render_divisor(D)
    assert parse_divisor(text, QQ) == D


def test_divisor_of_function_known(curve):
    # div(x) = P(0,1) + P(0,-1) - inf+ - inf-
    fn = CurveFunction(P(0, 1), P(0), P(1))
    D = divisor_of_function(fn, curve)
    assert D.degree() == 0
    assert D.multiplicity(INF_PLUS_PLACE) == -1
    assert D.multiplicity(INF_MINUS_PLACE) == -1
    # div(y) = the eight Weierstrass points - 4 inf+ - 4 inf-
    fy = CurveFunction(P(0), P(1), P(1))
    Dy = divisor_of_function(fy, curve)
    assert Dy.degree() == 0
    assert Dy.multiplicity(INF_PLUS_PLACE) == -4
    assert Dy.multiplicity(INF_MINUS_PLACE) == -4
    assert all(pl.ramified for pl, m in Dy.places.items()
               if pl.kind == "affine")


def test_divisor_of_function_degree_zero_random(curve):
    assert props.function_divisor_degrees(curve, samples=120) == 120


def test_place_from_point(curve):
    pl = place_from_point(Fraction(0), Fraction(1), curve)
    assert pl.degree == 1 and pl.v.coeffs[0] == 1
    K = NumberField([Fraction(1), Fraction(0), Fraction(1)])
    i = K.gen()
    pl2 = place_from_point(i, K.from_int(4), curve)
    assert pl2.degree == 2
    assert pl2.u == P(1, 0, 1)


def test_is_irreducible_degree3(curve):
    pls = places_over(P(1, 2, -2, 1), curve)  # the standard cubic place
    pl = pls[0][0]
    D = Divisor({pl: 1})
    assert is_irreducible_degree3(D)
    split = places_over(P(0, 1), curve)[0][0]
    mixed = Divisor({split: 3})
    assert not is_irreducible_degree3(mixed)
