import random
from fractions import Fraction

import pytest

from fivesquares.fields import GF, NumberField, QQ
from fivesquares.progression import (
    SPoint,
    enumerate_s_points,
    eq4_value,
    finite_field_checks,
    gjx_condition,
    gjx_scan,
    map_to_c,
    pullback,
    pullback_normalized,
    rational_is_square,
    verify_quotient_identity,
)


def test_spoint_validity():
    pt = SPoint(QQ, tuple(Fraction(1) for _ in range(5)))
    assert pt.is_valid()
    with pytest.raises(ZeroDivisionError):
        map_to_c(pt)  # a = c: the constant progression
    bad = SPoint(QQ, (Fraction(1), Fraction(2), Fraction(3), Fraction(4),
                      Fraction(5)), check=False)
    assert not bad.is_valid()
    with pytest.raises(ValueError):
        SPoint(QQ, (Fraction(1), Fraction(2), Fraction(3), Fraction(4),
                    Fraction(5)))


def test_eq4_values():
    assert eq4_value(Fraction(0)) == 1
    assert eq4_value(Fraction(1)) == 4
    assert rational_is_square(eq4_value(Fraction(1))) == (True, Fraction(2))


def test_map_to_c_finite_field():
    F = GF(11)
    pts = enumerate_s_points(F)
    assert len(pts) >= 8
    curve_vals = 0
    for pt in pts:
        a, b, c, d, e = pt.coords
        assert pt.is_valid()
        if a == c:
            continue
        x, y = map_to_c(pt)  # raises if the image misses the curve
        assert eq4_value(x, F) == (F.from_int(2) * b * (a - F.from_int(2) * c + e)
                                   / ((a - c) * (a - c))) ** 2
        curve_vals += 1
    assert curve_vals > 0


def test_involution_compatibility():
    F = GF(13)
    for pt in enumerate_s_points(F):
        a, b, c, d, e = pt.coords
        if a == c:
            continue
        flipped = SPoint(F, (a, -b, c, -d, e))
        assert flipped.is_valid()
        assert map_to_c(flipped) == map_to_c(pt)


def test_quotient_identities():
    rep = verify_quotient_identity()
    assert rep["identity_2"] and rep["identity_4"]
    assert rep["residual_2"].is_zero() and rep["residual_4"].is_zero()


def test_finite_field_checks():
    out = finite_field_checks(primes=[11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                      47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
                                      97, 101, 103, 107, 109, 113], minimum=500)
    assert out["pass"] and out["checks"] >= 500


def test_gjx_condition_failures():
    assert not gjx_condition(0)["condition"]
    assert not gjx_condition(1)["condition"]


def test_gjx_scan(fixtures):
    hits = gjx_scan(5)
    assert [str(rec["t"]) for rec in hits] == fixtures["gjx"]["hits"]
    for rec in hits:
        # five squares in arithmetic progression over Q(sqrt(D))
        sq = rec["progression"]
        delta = rec["common_difference"]
        assert all(sq[i + 1] - sq[i] == delta for i in range(4))
        slot = rec["sqrt_d_slot"]
        assert rec["slot_value"] == rec["D"] * rec["slot_cofactor_root"] ** 2


def test_pullback_rational():
    rec = pullback(Fraction(0), Fraction(1))
    assert rec.is_square and rec.degree == 1
    assert rec.point.is_valid()
    assert map_to_c(rec.point) == (Fraction(0), Fraction(1))


def test_pullback_quadratic(fixtures):
    K = NumberField([Fraction(1), Fraction(0), Fraction(1)])
    i = K.gen()
    rec = pullback(i, K.from_int(-4))
    assert not rec.is_square and rec.degree == 4
    assert rec.point.is_valid()
    L = rec.point.field
    assert map_to_c(rec.point) == (L(i), L(K.from_int(-4)))
    from fivesquares.poly import render_poly

    assert render_poly(rec.defining_poly, var="z") == \
        fixtures["pullback"]["quadratic_example"]["defining"]
    # the preimage scales to (sqrt2, 1, 0, i, i*sqrt2): b^2 = 1/2, c = 0
    a, b, c, d, e = rec.point.coords
    assert b * b == L.base_coerce(K([Fraction(1, 2), Fraction(0)]))
    assert not c
    scaled = SPoint(L, (a / b, L.one(), c / b, d / b, e / b))
    assert scaled.is_valid()
    assert (a / b) * (a / b) == L.from_int(2)          # a/b = sqrt(2)
    assert (d / b) * (d / b) == -L.one()               # d/b = +-i
    assert (e / b) * (e / b) == -L.from_int(2)         # e/b = +-i*sqrt(2)


def test_pullback_cubic_display(fixtures):
    K = NumberField([Fraction(1), Fraction(2), Fraction(-2), Fraction(1)])
    theta = K.gen()
    y_disp = K([Fraction(-1), Fraction(1), Fraction(2)])  # 2 theta^2 + theta - 1
    defining, pt = pullback_normalized(theta, -y_disp)
    assert [str(c) for c in defining.coeffs] == \
        fixtures["pullback"]["theta"]["defining"]
    assert [[str(c) for c in co.coords] for co in pt.coords] == \
        fixtures["pullback"]["theta"]["coords"]
    assert pt.is_valid()
    # feeding the other branch of y gives the involution-conjugate preimage
    defining2, pt2 = pullback_normalized(theta, y_disp)
    assert defining2 == defining
    a, b, c, d, e = pt.coords
    a2, b2, c2, d2, e2 = pt2.coords
    assert (a2, b2, c2, d2, e2) == (a, b, c, -d, e)


def test_pullback_rejects_branch_point():
    with pytest.raises(ZeroDivisionError):
        pullback(Fraction(-1), Fraction(4))
