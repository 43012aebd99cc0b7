import numpy as np
import pytest

from vortex_mbx.params import CONCENTRATIONS, medium_for


@pytest.fixture(params=CONCENTRATIONS, ids=lambda c: f"C{c:g}")
def medium(request):
    return medium_for(request.param)


@pytest.fixture
def medium3():
    return medium_for(3.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(module.RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
