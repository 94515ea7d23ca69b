import pytest

from fivesquares.curve import paper_curve
from fivesquares.jacobian import torsion_group
from fivesquares.report import load_fixtures, run_all


@pytest.fixture(scope="session")
def curve():
    return paper_curve()


@pytest.fixture(scope="session")
def table(curve):
    return torsion_group(curve)


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


@pytest.fixture(scope="session")
def report():
    return run_all()
