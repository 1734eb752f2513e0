from pathlib import Path

import pytest

from surfmcg.surface import standard_scheme
from surfmcg.triangulation import triangulate

DATA = Path(__file__).resolve().parent.parent / "data"

# Lines collected by the acceptance suite, echoed after the run.
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def genus2():
    return triangulate(standard_scheme(2), "split", parts=4)


@pytest.fixture(scope="session")
def torus2():
    """Twice-holed torus."""
    return triangulate(standard_scheme(1, 2), "split", parts=4)
