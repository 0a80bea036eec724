from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from rcst.generators import random_connected_graph
from rcst.graph import Graph


def path_graph(weights: list[int]) -> Graph:
    n = len(weights) + 1
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), tuple(weights))


def star_graph(weights: list[int]) -> Graph:
    """Center 0 with leaves 1..k."""
    return Graph(len(weights) + 1, tuple((0, i + 1) for i in range(len(weights))), tuple(weights))


def cycle_graph(weights: list[int]) -> Graph:
    n = len(weights)
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)), tuple(weights))


def complete_graph(n: int, weight: int = 1) -> Graph:
    edges = tuple((u, v) for u in range(n) for v in range(u + 1, n))
    return Graph(n, edges, (weight,) * len(edges))


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 7, max_w: int = 9, min_w: int = 0, reqs: bool = False):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    density = draw(st.sampled_from([0.0, 0.3, 0.6, 1.0]))
    rng = random.Random(seed)
    return random_connected_graph(rng, n, density, (min_w, max_w), (0, 3) if reqs else None)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261019)
