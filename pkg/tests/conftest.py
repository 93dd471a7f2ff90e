import numpy as np
import pytest

from slicereg import Quaternion, RegularSeries
from slicereg.quaternion import QI, QJ, QK

P = RegularSeries.polynomial

# acceptance results collected by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES = {}


def random_poly(rng, max_degree, min_degree=0):
    d = int(rng.integers(min_degree, max_degree + 1))
    coeffs = rng.standard_normal((d + 1, 4))
    while np.linalg.norm(coeffs[-1]) < 1e-3:
        coeffs[-1] = rng.standard_normal(4)
    return RegularSeries.from_array(coeffs)


def random_quat(rng, radius=1.0):
    v = rng.standard_normal(4)
    return Quaternion.from_array(v / np.linalg.norm(v) * radius * rng.random() ** 0.25)


def powers_eval(f, q):
    """Independent oracle: sum of explicit powers q^n times a_n (no Horner)."""
    acc = Quaternion()
    qn = Quaternion(1.0)
    for a in f.coeffs:
        acc = acc + qn * a
        qn = qn * q
    return acc


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def q_minus_i():
    return P([-QI, 1])


@pytest.fixture
def q_minus_j():
    return P([-QJ, 1])


@pytest.fixture
def q2_plus_1():
    return P([1, 0, 1])


@pytest.fixture
def geometric64():
    return RegularSeries.truncated([1.0] * 65, order=64, trust_radius=1.0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


__all__ = ["P", "QI", "QJ", "QK", "random_poly", "random_quat", "powers_eval"]
