"""Shared fixtures: canonical instances reused across the test modules."""

from __future__ import annotations

import pytest

from planar_mssp import build, build_graph, gen_grid, normalize

# verdict lines queued by the acceptance tests; printed after capture
# ends so they are visible in every pytest run
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)

# One-way triangle: arcs 0->1 (5), 1->2 (7), 0->2 (4). Two faces of
# length three; the face walking 0,1,2 makes vertex 2 a dead end seen
# from itself and vertex 1 unable to reach 0.
TRI_ONEWAY_SLOTS = [
    (0, 1, 0, 0, 5, None),
    (1, 2, 1, 0, 7, None),
    (0, 2, 1, 1, 4, None),
]

# Two triangles sharing vertex 0 (a cut vertex). The unbounded face's
# walk has length six and visits vertex 0 twice.
BOWTIE_SLOTS = [
    (0, 1, 0, 0, 1, 1),
    (1, 2, 1, 0, 1, 1),
    (2, 0, 1, 3, 1, 1),
    (0, 3, 2, 0, 1, 1),
    (3, 4, 1, 0, 1, 1),
    (4, 0, 1, 1, 1, 1),
]


@pytest.fixture(scope="session")
def grid3():
    return gen_grid(3, seed=1)


@pytest.fixture(scope="session")
def norm3(grid3):
    g, outer = grid3
    return normalize(g, outer, seed=1)


@pytest.fixture(scope="session")
def oracle3(norm3):
    return build(norm3, instrument=True)


@pytest.fixture(scope="session")
def grid5():
    return gen_grid(5, seed=3)


@pytest.fixture(scope="session")
def norm5(grid5):
    g, outer = grid5
    return normalize(g, outer, seed=3)


@pytest.fixture(scope="session")
def oracle5(norm5):
    return build(norm5)


@pytest.fixture
def tri_oneway():
    return build_graph(3, TRI_ONEWAY_SLOTS)


@pytest.fixture
def bowtie():
    return build_graph(5, BOWTIE_SLOTS)
