import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from repgraph.graph import grid_window, lattice_ball  # noqa: E402
from repgraph.repulsion import default_hub_window  # noqa: E402


@pytest.fixture(scope="session")
def hub():
    return default_hub_window()


@pytest.fixture(scope="session")
def z2():
    return lattice_ball(6)


@pytest.fixture(scope="session")
def grid6():
    return grid_window(6, 6)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
