import pytest

from tilerect.assembler import default_budget, run_policy_sequence, union_closure
from tilerect.rectgen import generate_tileset


@pytest.fixture(scope="session")
def t11():
    return generate_tileset(11, 56)


@pytest.fixture(scope="session")
def t11_closure(t11):
    return union_closure(t11.tas, default_budget(11, 56))


@pytest.fixture(scope="session")
def t11_policy(t11):
    return run_policy_sequence(t11.tas, default_budget(11, 56))


ACCEPTANCE_LINES = {}


def record_criterion(n, ok, detail):
    """Remember one acceptance line; printed once at the end of the run."""
    ACCEPTANCE_LINES[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[n])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
