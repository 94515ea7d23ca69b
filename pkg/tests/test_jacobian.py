import random
from fractions import Fraction

import pytest

import props
from fivesquares.divisors import INF_MINUS_PLACE, INF_PLUS_PLACE, Divisor
from fivesquares.jacobian import (
    DivisorClass,
    class_add,
    class_neg,
    class_order,
    class_smul,
    jacobian_fq_span,
    reduction_map,
    span,
    standard_generators,
    torsion_bound_check,
    torsion_group,
    two_torsion_classify,
)
from fivesquares.poly import render_poly
from fivesquares.riemann_roch import is_principal


def test_generator_orders(curve):
    gens = standard_generators(curve)
    assert [class_order(g) for g in gens] == [4, 4, 8]


def test_span_structure(curve):
    gens = standard_generators(curve)
    structure = span(list(gens))
    assert structure.order == 128
    assert structure.invariant_factors == [4, 4, 8]


def test_table_distinct(table):
    assert len(table) == 128
    assert len({cls.key() for cls in table.values()}) == 128


def test_group_axioms_random(curve, table):
    assert props.group_axioms(curve, table, samples=60) == 60


def test_canonical_form_agrees_with_principality(curve, table):
    """Equal canonical keys iff the difference is principal (spot check)."""
    rng = random.Random(7)
    classes = list(table.values())
    for _ in range(12):
        A, B = rng.choice(classes), rng.choice(classes)
        diff = A.representative() - B.representative()
        principal = is_principal(diff, curve) is not None
        assert principal == (A.key() == B.key())


def test_class_smul(curve, table):
    A = table[(1, 2, 3)]
    acc = DivisorClass.zero(curve)
    for _ in range(5):
        acc = class_add(acc, A)
    assert class_smul(5, A) == acc
    assert class_smul(-1, A) == class_neg(A)
    assert class_smul(0, A).is_zero()


def test_reduction_homomorphism(curve, table):
    rng = random.Random(11)
    classes = list(table.values())
    for _ in range(8):
        A, B = rng.choice(classes), rng.choice(classes)
        assert reduction_map(class_add(A, B), 5) == \
            class_add(reduction_map(A, 5), reduction_map(B, 5))


def test_reduction_injective(table):
    images = {reduction_map(cls, 5).key() for cls in table.values()}
    assert len(images) == 128


def test_jacobian_f5(curve, fixtures):
    structure = jacobian_fq_span(curve.reduce_mod(5))
    assert structure.order == 512
    assert structure.invariant_factors == \
        fixtures["reduction"]["5"]["invariant_factors"]


def test_torsion_bound_check(curve, table, fixtures):
    report = torsion_bound_check(curve, table=table)
    assert report["pass"]
    assert report["order_I"] == 128
    assert report["invariant_factors_I"] == [4, 4, 8]
    assert report["two_rank_I"] == 3
    rec = report["primes"][5]
    assert rec["order"] == 512
    assert rec["two_rank_image"] == 3
    assert rec["two_rank_full"] == fixtures["reduction"]["5"]["full_two_rank"]
    assert rec["image_size"] == 128 and rec["divides"]


def test_two_torsion_witnesses(curve, table, fixtures):
    zero_key = DivisorClass.zero(curve).key()
    got = []
    for combo, cls in sorted(table.items()):
        if cls.key() == zero_key or class_smul(2, cls).key() != zero_key:
            continue
        rec = two_torsion_classify(cls)
        assert rec["case"] == "ii"
        # the witness identity f = h1^2 - a h2^2 holds exactly
        h1, a, h2 = rec["h1"], rec["a"], rec["h2"]
        assert h1 * h1 - h2 * h2 * curve.field.from_int(a) == curve.f
        got.append({"combo": list(combo), "case": "ii",
                    "h1": render_poly(h1), "a": a, "h2": render_poly(h2)})
    assert got == fixtures["torsion"]["two_torsion_witnesses"]


def test_two_torsion_rejects_non_involution(curve, table):
    with pytest.raises(ValueError):
        two_torsion_classify(table[(0, 0, 1)])  # order 8


@pytest.mark.slow
def test_jacobian_f7_deep(curve, fixtures):
    structure = jacobian_fq_span(curve.reduce_mod(7))
    assert structure.order == 512
    assert structure.invariant_factors == \
        fixtures["reduction"]["7"]["invariant_factors"]
    report = torsion_bound_check(curve, deep=True)
    assert report["pass"]
    assert report["primes"][7]["image_size"] == 128
