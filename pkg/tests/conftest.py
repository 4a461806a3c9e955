import pytest

from rieszfunc.critzeta import find_zero_ordinates
from rieszfunc.numtheory import mobius_sieve

ACCEPTANCE_LINES: list[str] = []


def report(criterion: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def table():
    return mobius_sieve(10**6)


@pytest.fixture(scope="session")
def small_table():
    return mobius_sieve(10**4)


@pytest.fixture(scope="session")
def zeros30():
    return find_zero_ordinates(30)


@pytest.fixture(scope="session")
def big_table():
    # reaches the truncation point of the direct p = 1 series at x = 20, eps = 1e-13
    return mobius_sieve(11 * 10**6)
