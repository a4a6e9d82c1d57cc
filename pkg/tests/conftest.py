import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from matchgates.kasteleyn import OrientedPlaneGraph
from matchgates.numeric import GaussianRational
from matchgates.planegraph import PlaneGraph, edge_key

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

EARED_ARCS = [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7), (4, 7), (4, 8), (8, 1)]
EARED_ROTATION = {
    1: [2, 5, 8, 4],
    2: [5, 1, 3, 6],
    3: [6, 2, 4, 7],
    4: [3, 1, 8, 7],
    5: [1, 2],
    6: [2, 3],
    7: [3, 4],
    8: [4, 1],
}


def eared_square_graph() -> PlaneGraph:
    """Square 1-2-3-4 with a triangle hung off each side; externals 5..8."""
    edges = {edge_key(*a): 1 for a in EARED_ARCS}
    return PlaneGraph(range(1, 9), edges, EARED_ROTATION, (5, 2), [5, 6, 7, 8])


def eared_square() -> OrientedPlaneGraph:
    return OrientedPlaneGraph(eared_square_graph(), {edge_key(*a): a for a in EARED_ARCS})


@pytest.fixture
def eared():
    return eared_square()


rngs = st.integers(0, 2**32 - 1).map(random.Random)

rationals = st.fractions(max_denominator=20).filter(lambda q: abs(q.numerator) < 10**6)
gaussians = st.builds(GaussianRational, rationals, rationals)
nonzero_gaussians = gaussians.filter(bool)


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
