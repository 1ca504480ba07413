import pytest

from g3surj.curve import load_curve, weil_polynomial

from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
CURVE_PATH = REPO / "fixtures" / "curves" / "genus3_conductor8907.json"
HECKE_DIR = REPO / "fixtures" / "hecke"


@pytest.fixture(scope="session")
def reference_curve():
    return load_curve(CURVE_PATH)


@pytest.fixture(scope="session")
def hecke_dir():
    return HECKE_DIR


@pytest.fixture(scope="session")
def curve_path():
    return CURVE_PATH


@pytest.fixture(scope="session")
def reference_weils(reference_curve):
    """Weil polynomials at the auxiliary primes, computed once per session
    (the p = 37 point count over F_37^3 dominates)."""
    return {p: weil_polynomial(reference_curve, p) for p in (2, 5, 7, 19, 37)}
