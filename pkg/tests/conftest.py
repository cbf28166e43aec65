import pytest

from etaseries.numerics import PrecisionContext


@pytest.fixture
def ctx():
    return PrecisionContext(30)


@pytest.fixture
def mp(ctx):
    return ctx.mp


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    def add(criterion, passed, detail="", soft=False):
        status = "PASS" if passed else ("SOFT-FAIL" if soft else "FAIL")
        ACCEPTANCE_LINES.append(f"[criterion {criterion:>2}] {status:9s} {detail}")

    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
