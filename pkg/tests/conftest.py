import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gaborlab import GridSpec, TruncationSpec, make_hexagonal, make_rectangular  # noqa: E402


@pytest.fixture(scope="session")
def square2():
    return make_rectangular(math.sqrt(0.5), math.sqrt(0.5))


@pytest.fixture(scope="session")
def hex2():
    return make_hexagonal(2.0)


@pytest.fixture(scope="session")
def grid():
    return GridSpec()


@pytest.fixture(scope="session")
def trunc():
    return TruncationSpec()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
