import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from qsym.couple import DiagonalData, build_self_dual_diagonal_pairing  # noqa: E402
from qsym.linalg import Field  # noqa: E402

QQ = Field()
F5 = Field(5)
SPECS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "specs")


def diagonal_instance(name):
    """(couple, pairing, braiding as plain values, prime or None)."""
    if name == "q1":
        d = DiagonalData.standard([[1]], QQ, ())
        q, p = [[1]], None
    elif name == "f5":
        d = DiagonalData.standard([[2]], F5, (4,))
        q, p = [[2]], 5
    elif name == "qm1":
        d = DiagonalData.standard([[-1]], QQ, (2,))
        q, p = [[-1]], None
    elif name == "generic":
        d = DiagonalData.standard([[2]], QQ, (0,))
        q, p = [[2]], None
    elif name == "a2":
        d = DiagonalData.standard([[4, "1/2"], ["1/2", 4]], QQ, (0, 0))
        from fractions import Fraction
        q, p = [[4, Fraction(1, 2)], [Fraction(1, 2), 4]], None
    else:
        raise KeyError(name)
    c, _, pair = build_self_dual_diagonal_pairing(d)
    return c, pair, q, p


@pytest.fixture(scope="session")
def instances():
    return {n: diagonal_instance(n) for n in ("q1", "f5", "qm1", "generic", "a2")}


def spec_path(name):
    return os.path.join(SPECS, name)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria (exact arithmetic, tolerance: equality)")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
