"""
Shared fixtures: the fixture diagrams, their systems and refined solutions.
"""

import os
import sys

import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.diagram import parse_pd
from src.equations import region_equations
from src.solver import Solution, SolverConfig, pick_geometric, refine, solve
from src.cache import CacheLayer
from tests.golden import DATASETS, FIGURE_EIGHT_PD, TREFOIL_PD, published_values


@pytest.fixture(scope="session")
def figure_eight():
    return parse_pd(FIGURE_EIGHT_PD)


@pytest.fixture(scope="session")
def trefoil():
    return parse_pd(TREFOIL_PD)


@pytest.fixture(scope="session")
def link_8_8_2():
    with open(os.path.join(DATASETS, "8_8_2.pd")) as handle:
        return parse_pd(handle.read())


@pytest.fixture(scope="session")
def system_8_8_2(link_8_8_2):
    return region_equations(link_8_8_2)


@pytest.fixture(scope="session")
def solution_8_8_2(system_8_8_2):
    """Published decimals polished to a root."""
    rough = Solution(published_values(system_8_8_2), system_8_8_2.names, float("inf"))
    return refine(system_8_8_2, rough, 1e-12)


@pytest.fixture(scope="session")
def figure_eight_system(figure_eight):
    return region_equations(figure_eight)


@pytest.fixture(scope="session")
def figure_eight_solution(figure_eight, figure_eight_system):
    solutions = solve(figure_eight_system, SolverConfig(starts=40, seed=7))
    picked = pick_geometric(solutions, figure_eight, figure_eight_system)
    assert picked is not None, "no geometric root for the figure-eight knot"
    return picked


@pytest.fixture
def cache():
    layer = CacheLayer(use_fake=True)
    layer.clear()
    return layer
