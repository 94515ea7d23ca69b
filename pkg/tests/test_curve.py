from fractions import Fraction

import pytest

from fivesquares.curve import (
    CurveError,
    CurveModel,
    InseparableError,
    NotMonicError,
    OddDegreeError,
    count_points,
    enumerate_points,
    has_good_reduction,
    jacobian_order_fq,
    l_polynomial,
    paper_curve,
)
from fivesquares.fields import GF, QQ
from fivesquares.poly import Poly


def P(*coeffs):
    return Poly(QQ, [Fraction(c) for c in coeffs])


def test_model_validation():
    with pytest.raises(NotMonicError):
        CurveModel(P(1, 0, 0, 0, 0, 0, 2))
    with pytest.raises(CurveError):
        CurveModel(P(1, 0, 0, 1))  # degree too small
    with pytest.raises(InseparableError):
        CurveModel(P(0, 0, 1) * P(0, 0, 1) * P(1, 0, 1))  # x^4 (x^2+1)
    curve = paper_curve()
    assert curve.genus == 3
    assert curve.f.degree() == 8


def test_odd_degree_rejected():
    with pytest.raises((OddDegreeError, CurveError)):
        CurveModel(P(1, 0, 0, 0, 0, 0, 0, 1))  # degree 7


def test_reduction_profile():
    curve = paper_curve()
    assert has_good_reduction(curve, 5)
    assert has_good_reduction(curve, 7)
    assert not has_good_reduction(curve, 3)
    with pytest.raises(CurveError):
        has_good_reduction(curve, 2)
    with pytest.raises(CurveError):
        curve.reduce_mod(3)


def test_infinity_series():
    curve = paper_curve()
    s = curve.infinity_series(12)
    # s(w)^2 must equal w^8 f(1/w) = 1 + 14w^4 + w^8 up to O(w^12)
    square = [Fraction(0)] * 12
    for i in range(12):
        for j in range(12 - i):
            square[i + j] += s[i] * s[j]
    expect = [Fraction(0)] * 12
    expect[0], expect[4], expect[8] = Fraction(1), Fraction(14), Fraction(1)
    assert square == expect


def test_counts(fixtures):
    curve = paper_curve()
    for p in (5, 7):
        counts = [count_points(curve, p, k) for k in (1, 2, 3)]
        assert counts == fixtures["reduction"][str(p)]["counts"]


def test_enumeration_matches_brute_force():
    curve = paper_curve().reduce_mod(5)
    F = GF(5)
    brute = 2  # the two points at infinity
    for a in range(5):
        for b in range(5):
            x, y = F.from_int(a), F.from_int(b)
            if y * y == curve.f.evaluate(x):
                brute += 1
    assert len(enumerate_points(curve)) == brute == 12


def test_l_polynomial(fixtures):
    curve = paper_curve()
    for p in (5, 7):
        curve_p = curve.reduce_mod(p)
        counts = fixtures["reduction"][str(p)]["counts"]
        L = l_polynomial(curve_p, counts)
        assert [str(c) for c in L.coeffs] == fixtures["reduction"][str(p)]["l_poly"]
        # functional equation a_{2g-i} = q^{g-i} a_i
        a = L.coeffs
        for i in range(0, 3):
            assert a[6 - i] == p ** (3 - i) * a[i]
        assert jacobian_order_fq(curve_p) == 512
    with pytest.raises(CurveError):
        l_polynomial(curve.reduce_mod(5), [500, 44, 60])  # Weil bound violation


def test_count_points_extension_field():
    curve = paper_curve()
    assert count_points(curve, 5, 2) == 44
