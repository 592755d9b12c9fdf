import numpy as np
import pytest

from csplan.geometry import Environment, PlanningProblem
from csplan.roadmap import Roadmap


@pytest.fixture
def empty_env():
    return Environment((0.0, 0.0, 12.0, 12.0), ())


@pytest.fixture
def gap_wall_env():
    """One vertical wall across a 12x12 workspace, pierced by an extruded
    1-unit passage (a short tube) centered at (6.0, 6.0)."""
    return Environment(
        (0.0, 0.0, 12.0, 12.0),
        (
            (5.875, 0.0, 6.125, 5.5),
            (5.875, 6.5, 6.125, 12.0),
            (4.975, 5.25, 7.025, 5.5),
            (4.975, 6.5, 7.025, 6.75),
        ),
    )


@pytest.fixture
def sealed_env():
    """Wall with no opening: left and right halves are disconnected."""
    return Environment((0.0, 0.0, 12.0, 12.0), ((5.875, 0.0, 6.125, 12.0),))


@pytest.fixture
def corridor_env():
    """Horizontal corridor of width 0.6 between two slabs, open at both
    ends; corridor interior y in (4.7, 5.3), x in (2, 8)."""
    return Environment(
        (0.0, 0.0, 10.0, 10.0),
        ((2.0, 4.4, 8.0, 4.7), (2.0, 5.3, 8.0, 5.6)),
    )


@pytest.fixture
def gap_problem(gap_wall_env):
    return PlanningProblem(
        np.array([1.5, 6.0]), np.array([10.5, 6.0]), gap_wall_env, None
    )


def roadmap_of(coords, edges=(), dim=2):
    g = Roadmap(dim)
    for q in coords:
        g.add_vertex(np.asarray(q, dtype=float))
    for u, v in edges:
        g.add_edge(u, v)
    return g


@pytest.fixture
def make_roadmap():
    return roadmap_of
