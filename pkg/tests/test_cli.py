import json

import pytest

from fivesquares.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_count(capsys, tmp_path):
    path = tmp_path / "count.json"
    code, out, _ = run(capsys, "--json", str(path), "count", "--prime", "5")
    assert code == 0
    assert "#C(F_5) = 12" in out
    assert "#J(F_5) = L(1) = 512" in out
    data = json.loads(path.read_text())
    assert data["jacobian_order"] == 512
    assert data["counts"] == [12, 44, 60]


def test_count_extension(capsys):
    code, out, _ = run(capsys, "count", "--prime", "5", "--ext", "2")
    assert code == 0 and "44" in out


def test_jacobian_torsion(capsys):
    code, out, _ = run(capsys, "jacobian", "torsion")
    assert code == 0
    assert "generator orders: 4, 4, 8" in out
    assert "128" in out


def test_jacobian_structure(capsys):
    code, out, _ = run(capsys, "jacobian", "structure")
    assert code == 0
    assert "order 128" in out and "(4, 4, 8)" in out


def test_jacobian_two_torsion(capsys):
    code, out, _ = run(capsys, "jacobian", "two-torsion")
    assert code == 0
    assert out.count("case (ii)") == 7


def test_sweep(capsys, tmp_path):
    path = tmp_path / "rows.json"
    code, out, _ = run(capsys, "--json", str(path), "sweep", "--degree", "1")
    assert code == 0
    assert "histogram: l=0: 120, l=1: 8" in out
    rows = json.loads(path.read_text())
    assert len(rows) == 128


def test_points_degree_3(capsys):
    code, out, _ = run(capsys, "points", "--degree", "3")
    assert code == 0
    assert out.count("u = ") == 16
    assert "x^3 - 2*x^2 + 2*x + 1" in out


def test_pullback_theta(capsys, tmp_path):
    path = tmp_path / "theta.json"
    code, out, _ = run(capsys, "--json", str(path), "pullback", "--point",
                       "theta-example")
    assert code == 0
    assert "phi^6 - 2*phi^4 - 2*phi^2 - 1" in out
    data = json.loads(path.read_text())
    assert data["degree"] == 6


def test_pullback_quadratic(capsys):
    code, out, _ = run(capsys, "pullback", "--point", "x^2+1,-4")
    assert code == 0
    assert "preimage field degree: 4" in out


def test_pullback_off_curve(capsys):
    code, _, err = run(capsys, "pullback", "--point", "x-2,1")
    assert code == 1
    assert "does not lie on the curve" in err


def test_gjx(capsys):
    code, out, _ = run(capsys, "gjx", "--height", "5")
    assert code == 0
    assert "8 admissible parameters" in out
    assert "t = 4" in out


def test_identity(capsys):
    code, out, _ = run(capsys, "identity")
    assert code == 0
    assert "reduces to 0: True" in out
