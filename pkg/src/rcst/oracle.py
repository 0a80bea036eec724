"""Exact brute-force solvers used as ground truth."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .costs import CostValue, routing_cost_pairs, src_cost_pairs, two_source_cost
from .errors import CapExceeded
from .graph import Graph, SpanningTree, TwoSourceSpec, is_connected, verify_spanning_tree

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class ExactResult:
    cost: CostValue
    tree: SpanningTree
    trees_examined: int


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        x = parent[x]
    return x


def _connects(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(n))
    parts = n
    for u, v in edges:
        a, b = _find(parent, u), _find(parent, v)
        if a != b:
            parent[a] = b
            parts -= 1
    return parts == 1


def enumerate_spanning_trees(g: Graph, cap: int = DEFAULT_CAP) -> Iterator[SpanningTree]:
    """Yield every spanning tree of a connected graph exactly once.

    Edges are decided in id order: an edge is contracted (kept) when it joins
    two components of the current forest, and deleted only when it is not a
    bridge of what remains, so every branch ends in a tree.
    """
    if not is_connected(g):
        raise ValueError("spanning trees exist only for connected graphs")
    n, m = g.n, g.m
    count = 0

    def rec(i: int, chosen: list[int], comp: list[int]) -> Iterator[list[int]]:
        if len(chosen) == n - 1:
            yield chosen
            return
        if i == m:
            return
        u, v = g.edges[i]
        cu, cv = comp[u], comp[v]
        if cu != cv:
            merged = [cu if c == cv else c for c in comp]
            chosen.append(i)
            yield from rec(i + 1, chosen, merged)
            chosen.pop()
        rest = [g.edges[j] for j in chosen] + list(g.edges[i + 1 :])
        if _connects(n, rest):
            yield from rec(i + 1, chosen, comp)

    for ids in rec(0, [], list(range(n))):
        count += 1
        if count > cap:
            raise CapExceeded(f"more than {cap} spanning trees")
        yield verify_spanning_tree(g, ids)


def _exact(g: Graph, cost: Callable[[SpanningTree], CostValue], cap: int) -> ExactResult:
    best: tuple[CostValue, SpanningTree] | None = None
    count = 0
    for t in enumerate_spanning_trees(g, cap):
        count += 1
        c = cost(t)
        if best is None or c < best[0]:
            best = (c, t)
    assert best is not None
    return ExactResult(best[0], best[1], count)


def exact_mrct(g: Graph, weights: Sequence[int] | None = None, cap: int = DEFAULT_CAP) -> ExactResult:
    return _exact(g, lambda t: routing_cost_pairs(t, weights), cap)


def exact_sroct(
    g: Graph,
    weights: Sequence[int] | None = None,
    requirements: Sequence[int] | None = None,
    cap: int = DEFAULT_CAP,
) -> ExactResult:
    return _exact(g, lambda t: src_cost_pairs(t, weights, requirements), cap)


def exact_w2mrct(
    g: Graph, spec: TwoSourceSpec, weights: Sequence[int] | None = None, cap: int = DEFAULT_CAP
) -> ExactResult:
    return _exact(g, lambda t: two_source_cost(t, spec, weights), cap)


def _walks(g: Graph, weights: Sequence[int], s: int, k: int, simple: bool) -> Iterator[tuple[int, int, int]]:
    """``(end, hops, weight)`` for every path (or walk) from ``s`` with at most ``k`` edges."""
    on_path = [False] * g.n

    def rec(u: int, hops: int, weight: int) -> Iterator[tuple[int, int, int]]:
        yield u, hops, weight
        if hops == k:
            return
        on_path[u] = True
        for v, eid in g.adjacency[u]:
            if simple and on_path[v]:
                continue
            yield from rec(v, hops + 1, weight + weights[eid])
        on_path[u] = False

    yield from rec(s, 0, 0)


def count_shortest_paths_bruteforce(
    g: Graph, weights: Sequence[int] | None, s: int, t: int, k: int
) -> int:
    """Size of the set of least-weight ``s``-``t`` paths with at most ``k`` edges.

    Simple paths suffice for positive weights; with a zero weight present,
    walks of at most ``k`` edges are counted instead.
    """
    w = g.weights if weights is None else weights
    simple = all(x > 0 for x in w)
    found = [weight for end, _, weight in _walks(g, w, s, k, simple) if end == t]
    if not found:
        return 0
    low = min(found)
    return found.count(low)


def min_unique_witness_bruteforce(g: Graph, weights: Sequence[int]) -> tuple[int, int, int] | None:
    """Smallest ``(s, k, x)`` with two least-weight ``<= k``-edge paths, by path enumeration.

    Requires positive weights.
    """
    if any(x <= 0 for x in weights):
        raise ValueError("enumeration by simple paths needs positive weights")
    n = g.n
    for s in range(n):
        by_target: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for end, hops, weight in _walks(g, weights, s, n - 1, simple=True):
            by_target[end].append((hops, weight))
        for k in range(n):
            for x in range(n):
                ws = [weight for hops, weight in by_target[x] if hops <= k]
                if ws and ws.count(min(ws)) >= 2:
                    return s, k, x
    return None
