"""Regenerate the frozen fixture JSON files under src/fivesquares/fixtures/.

Every value here is recomputed from scratch by the library; the fixtures are
a drift detector (and a speed-up for `--strict` comparisons), not an input
to any computation.  Run from the repository root:

    python tools/freeze_fixtures.py
"""

import json
import pathlib
import sys
import time
from fractions import Fraction

from fivesquares.curve import count_points, jacobian_order_fq, l_polynomial, paper_curve
from fivesquares.fields import NumberField
from fivesquares.jacobian import (
    DivisorClass,
    class_order,
    class_smul,
    jacobian_fq_span,
    span,
    standard_generators,
    torsion_bound_check,
    torsion_group,
    two_torsion_classify,
)
from fivesquares.poly import factor_ff, render_poly
from fivesquares.progression import gjx_scan, pullback, pullback_normalized
from fivesquares.sweep import (
    cubic_points,
    histogram,
    quadratic_points,
    rational_points,
    sweep,
)

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "fivesquares" / "fixtures"


def dump(name, payload):
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {path}")


def main():
    t0 = time.time()
    curve = paper_curve()
    table = torsion_group(curve)

    # --- torsion group over Q -------------------------------------------
    Q1, Q2, Q3 = standard_generators(curve)
    orders = [class_order(g) for g in (Q1, Q2, Q3)]
    structure = span([Q1, Q2, Q3])
    zero_key = DivisorClass.zero(curve).key()
    witnesses = []
    for combo, cls in sorted(table.items()):
        if cls.key() == zero_key or class_smul(2, cls).key() != zero_key:
            continue
        rec = two_torsion_classify(cls)
        if rec["case"] == "i":
            witnesses.append({"combo": list(combo), "case": "i",
                              "h": render_poly(rec["h"])})
        else:
            witnesses.append({"combo": list(combo), "case": "ii",
                              "h1": render_poly(rec["h1"]), "a": rec["a"],
                              "h2": render_poly(rec["h2"])})
    dump("torsion", {
        "generator_orders": orders,
        "group_order": structure.order,
        "invariant_factors": structure.invariant_factors,
        "two_rank": sum(1 for d in structure.invariant_factors if d % 2 == 0),
        "two_torsion_witnesses": witnesses,
    })

    # --- reduction data at the certificate primes -----------------------
    reduction = {}
    fq_structures = {}
    for p in (5, 7):
        curve_p = curve.reduce_mod(p)
        counts = [count_points(curve, p, k) for k in (1, 2, 3)]
        L = l_polynomial(curve_p, counts)
        fq_structures[p] = jacobian_fq_span(curve_p)
        reduction[str(p)] = {
            "counts": counts,
            "l_poly": [str(c) for c in L.coeffs],
            "jacobian_order": jacobian_order_fq(curve_p),
            "invariant_factors": fq_structures[p].invariant_factors,
            "f_factors": [render_poly(g) for g, _ in factor_ff(curve_p.f)],
        }
    bound = torsion_bound_check(curve, deep=True, table=table,
                                fq_structures=fq_structures)
    for p in (5, 7):
        rec = bound["primes"][p]
        reduction[str(p)]["image_size"] = rec["image_size"]
        reduction[str(p)]["image_two_rank"] = rec["two_rank_image"]
        reduction[str(p)]["full_two_rank"] = rec["two_rank_full"]
    dump("reduction", reduction)

    # --- the three sweeps -----------------------------------------------
    rows1 = sweep(curve, 1, table=table)
    rows2 = sweep(curve, 2, table=table)
    rows3 = sweep(curve, 3, table=table)
    pts = rational_points(curve, rows=rows1)
    affine = sorted(
        [[str(x), str(y)] for x, y in (p for p in pts if isinstance(p, tuple))]
    )
    qp = quadratic_points(curve, rows=rows2)
    cps = cubic_points(curve, rows=rows3)
    sweeps = {
        "1": {
            "histogram": {str(k): v for k, v in sorted(histogram(rows1).items())},
            "affine_points": affine,
            "infinite_points": len(pts) - len(affine),
        },
        "2": {
            "histogram": {str(k): v for k, v in sorted(histogram(rows2).items())},
            "irreducible": [
                {"combo": list(combo),
                 "u": render_poly(next(iter(eff.places)).u),
                 "v": render_poly(next(iter(eff.places)).v)}
                for eff, combo in qp["irreducible"]
            ],
            "pencil": {
                "combo": list(qp["pencils"][0][0]),
                "basis": [render_poly(fn.a) for fn in qp["pencils"][0][1]],
            },
        },
        "3": {
            "histogram": {str(k): v for k, v in sorted(histogram(rows3).items())},
            "cubic": [
                {"combo": list(combo), "u": render_poly(pl.u),
                 "v": render_poly(pl.v)}
                for pl, combo in cps
            ],
        },
    }
    dump("sweeps", sweeps)

    # --- pullbacks of the 16 cubic points -------------------------------
    records = []
    for pl, combo in cps:
        K = NumberField([Fraction(c) for c in pl.u.coeffs])
        x0 = K.gen()
        y0 = pl.v.eval_in(K, x0)
        rec = pullback(x0, y0)
        records.append({
            "combo": list(combo),
            "base_degree": rec.base_degree,
            "degree": rec.degree,
            "defining": render_poly(rec.defining_poly, var="z"),
        })
    # the standard sextic display: theta place, conjugate branch of y
    theta_u = next(pl.u for pl, combo in cps if combo == (0, 1, 7))
    K = NumberField([Fraction(c) for c in theta_u.coeffs])
    theta = K.gen()
    y_disp = K([Fraction(-1), Fraction(1), Fraction(2)])  # 2*theta^2 + theta - 1
    defining, pt = pullback_normalized(theta, -y_disp)
    theta_fix = {
        "defining": [str(c) for c in defining.coeffs],
        "coords": [[str(c) for c in co.coords] for co in pt.coords],
    }
    # the quadratic example on the x^2 + 1 place
    K2 = NumberField([Fraction(1), Fraction(0), Fraction(1)])
    i = K2.gen()
    rec_i = pullback(i, K2.from_int(-4))
    quad_fix = {
        "u": "x^2 + 1",
        "y": "-4",
        "base_degree": rec_i.base_degree,
        "degree": rec_i.degree,
        "defining": render_poly(rec_i.defining_poly, var="z"),
    }
    dump("pullback", {"cubic": records, "theta": theta_fix,
                      "quadratic_example": quad_fix})

    # --- the quadratic-field criterion scan -----------------------------
    hits = gjx_scan(50)
    dump("gjx", {
        "height": 50,
        "hits": [str(rec["t"]) for rec in hits],
        "sqrt_d_slots": [rec["sqrt_d_slot"] for rec in hits],
    })

    print(f"done in {time.time() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
