import sys

import pytest

from dualhahn.howe import build_howe
from dualhahn.spinor_commutant import build_commutant, build_spinor_model


@pytest.fixture(scope="session")
def spinor22():
    """(m, m') = (2, 2) spinor model at cutoff 4 with its commutant generators."""
    model = build_spinor_model(2, 2, 4)
    return model, build_commutant(model)


@pytest.fixture(scope="session")
def howe22(spinor22):
    model, gens = spinor22
    return build_howe(model, gens)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if acceptance is None or not acceptance.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.LINES):
        terminalreporter.write_line(acceptance.LINES[n])
