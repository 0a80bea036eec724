"""Seeded random instance generators for tests and experiments."""

from __future__ import annotations

import random

from .graph import Graph, TwoSourceSpec


def random_tree_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Uniform random labelled tree via a Pruefer sequence."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (x for x in range(n) if degree[x] == 1)
    edges.append((u, v))
    return edges


def random_connected_graph(
    rng: random.Random,
    n: int,
    density: float = 0.5,
    weights: tuple[int, int] = (1, 9),
    requirements: tuple[int, int] | None = None,
    sources: TwoSourceSpec | None = None,
) -> Graph:
    """Random spanning tree plus each remaining pair independently with probability ``density``."""
    edges = {(min(u, v), max(u, v)) for u, v in random_tree_edges(rng, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < density:
                edges.add((u, v))
    ordered = sorted(edges)
    w = tuple(rng.randint(*weights) for _ in ordered)
    reqs = tuple(rng.randint(*requirements) for _ in range(n)) if requirements else ()
    return Graph(n, tuple(ordered), w, reqs, sources)
