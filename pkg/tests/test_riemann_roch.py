from fractions import Fraction

import pytest

import props
from fivesquares.divisors import (
    INF_MINUS_PLACE,
    INF_PLUS_PLACE,
    Divisor,
    divisor_of_function,
    places_over,
)
from fivesquares.fields import QQ
from fivesquares.poly import Poly
from fivesquares.riemann_roch import ell, is_principal, lspace, unique_effective


def P(*coeffs):
    return Poly(QQ, [Fraction(c) for c in coeffs])


def test_small_spaces(curve):
    assert ell(Divisor(), curve) == 1                      # constants only
    assert ell(Divisor({INF_MINUS_PLACE: -1}), curve) == 0
    # deg >= 2g - 1 = 5: l(D) = deg D - g + 1 exactly
    for k in range(5, 9):
        assert ell(Divisor({INF_MINUS_PLACE: k}), curve) == k - 2
    D = Divisor({INF_PLUS_PLACE: 2, INF_MINUS_PLACE: 4})
    space = lspace(D, curve)
    assert space.dimension == 4
    for fn in space.basis:
        E = divisor_of_function(fn, curve) + D
        assert E.is_effective()


def test_canonical_class(curve):
    # K = 2 inf+ + 2 inf-: l(K) = g = 3, l(0) = 1
    K = Divisor({INF_PLUS_PLACE: 2, INF_MINUS_PLACE: 2})
    assert ell(K, curve) == 3


def test_point_classes_nontrivial(curve):
    # no function has a single simple pole on a curve of positive genus
    assert ell(Divisor({INF_PLUS_PLACE: 1}), curve) == 1
    pl = places_over(P(0, 1), curve)[0][0]
    assert ell(Divisor({pl: 1, INF_MINUS_PLACE: -1}), curve) == 0


def test_riemann_roch_identity_random(curve):
    assert props.riemann_roch_identity(curve, samples=200) == 200


def test_unique_effective(curve):
    pl = places_over(P(0, 1), curve)[0][0]
    D = Divisor({pl: 1})
    assert unique_effective(D, curve) == D
    with pytest.raises(ValueError):
        unique_effective(Divisor({INF_MINUS_PLACE: 6}), curve)


def test_is_principal(curve):
    pls = places_over(P(0, 1), curve)
    p0, p0c = pls[0][0], pls[1][0]
    # div(x) is principal
    D = Divisor({p0: 1, p0c: 1, INF_PLUS_PLACE: -1, INF_MINUS_PLACE: -1})
    fn = is_principal(D, curve)
    assert fn is not None
    assert divisor_of_function(fn, curve) == D
    # inf+ - inf- is a nontrivial class (order 4)
    assert is_principal(Divisor({INF_PLUS_PLACE: 1, INF_MINUS_PLACE: -1}),
                        curve) is None
    assert is_principal(Divisor({INF_PLUS_PLACE: 1}), curve) is None  # deg != 0
    fn0 = is_principal(Divisor(), curve)
    assert divisor_of_function(fn0, curve).is_zero()
