import itertools
import os

import pytest
from hypothesis import settings

from nucleus import _backend
from nucleus.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

BACKENDS = _backend.available()
PAIRS = [(r, s) for s in range(2, 5) for r in range(1, s)]


def clique_edges(vs):
    return list(itertools.combinations(vs, 2))


@pytest.fixture
def k5():
    return Graph.from_edges(clique_edges(range(5)))


@pytest.fixture
def shared_edge_k4s():
    # K4 on {0,1,2,3} and K4 on {0,1,4,5}, sharing edge 0-1
    return Graph.from_edges(clique_edges(range(4)) + clique_edges([0, 1, 4, 5]))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
