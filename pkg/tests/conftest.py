import numpy as np
import pytest

from fclrel.scenario import load_scenario

_CRITERIA = []


@pytest.fixture(scope="session")
def prototype():
    return load_scenario("paper_repro")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def criterion():
    """Record one acceptance line; asserts so the test fails with it."""

    def record(number, title, passed, detail=""):
        _CRITERIA.append((number, title, bool(passed), detail))
        assert passed, f"criterion {number} ({title}) failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {title}  {detail}")
