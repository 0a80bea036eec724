"""Approximate minimum routing cost spanning trees via general stars.

For every short vertex sequence ``S`` a core subtree is grown by attaching
each ``v_i`` along its unique shortest path to the nearest vertex already in
the core; every other vertex then hangs off the core along its own unique
shortest path.  The cheapest resulting tree is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import perm

from .costs import CostValue, Unit, routing_cost_edges
from .errors import BudgetExceeded
from .graph import Graph, SpanningTree, is_connected, verify_spanning_tree
from .isolation import PerturbationConfig, ScaledWeights, add_path, closest, perturb
from .outcomes import Disconnected, Fail
from .parallel import parallel_map

DEFAULT_BUDGET = 10**8


def derive_r(epsilon: Fraction) -> int:
    """Smallest ``r >= 0`` with ``8/(9r+2) < epsilon/2``."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    r = max(0, int((16 / epsilon - 2) / 9) - 1)
    while Fraction(8, 9 * r + 2) >= epsilon / 2:
        r += 1
    return r


@dataclass(frozen=True)
class ApproxParams:
    epsilon: Fraction
    r: int

    @classmethod
    def from_epsilon(cls, epsilon: Fraction | int | str) -> "ApproxParams":
        eps = Fraction(epsilon)
        return cls(eps, derive_r(eps))

    @property
    def max_len(self) -> int:
        return self.r + 4

    @property
    def ratio(self) -> Fraction:
        """Guarantee on scaled weights, using the weaker ``8/(9r+2)`` constant."""
        return Fraction(4, 3) + Fraction(8, 9 * self.r + 2)

    def guarantee(self, n: int) -> Fraction:
        """Guarantee in original units after the perturbation is removed."""
        return self.ratio * (1 + Fraction(1, 2 * n))


@dataclass(frozen=True)
class CoreSubtree:
    sequence: tuple[int, ...]
    vertices: frozenset[int]
    edge_ids: frozenset[int]


@dataclass(frozen=True)
class ApproxResult:
    tree: SpanningTree
    scaled_cost: CostValue
    original_cost: CostValue
    sequence: tuple[int, ...]
    guarantee: Fraction
    candidates: int = 0
    seed: int | None = None


def _path_edges(g: Graph, path: tuple[int, ...]) -> list[int]:
    return [g.edge_id(a, b) for a, b in zip(path, path[1:])]


def build_core(sw: ScaledWeights, sequence: tuple[int, ...] | list[int]) -> CoreSubtree:
    if not sequence:
        raise ValueError("a core needs at least one vertex")
    g = sw.graph
    vertices = {sequence[0]}
    edges: set[int] = set()
    for v in sequence[1:]:
        path = add_path(sw, vertices, v)
        vertices.update(path)
        edges.update(_path_edges(g, path))
    return CoreSubtree(tuple(sequence), frozenset(vertices), frozenset(edges))


def star_edges(sw: ScaledWeights, core: CoreSubtree) -> set[int]:
    """Core edges plus the shortest path from each outside vertex to its closest core vertex."""
    g = sw.graph
    edges = set(core.edge_ids)
    members = sorted(core.vertices)
    for u in range(g.n):
        if u not in core.vertices:
            edges.update(_path_edges(g, sw.path(u, closest(sw, u, members))))
    return edges


def build_star(sw: ScaledWeights, sequence: tuple[int, ...] | list[int]) -> SpanningTree:
    return verify_spanning_tree(sw.graph, star_edges(sw, build_core(sw, sequence)))


def candidate_count(n: int, max_len: int) -> int:
    """Number of repeat-free sequences of length ``1..max_len`` over ``n`` vertices."""
    return sum(perm(n, k) for k in range(1, min(max_len, n) + 1))


def _best_from(args: tuple[ScaledWeights, int, int]) -> tuple[tuple, int]:
    """Cheapest star over all pruned sequences starting with ``first``.

    Extending by a vertex already in the core adds an empty path, so that
    sequence has the same tree as a strictly shorter one and can never win
    the ``(cost, k, S)`` ordering; such extensions are skipped.
    """
    sw, first, max_len = args
    g = sw.graph
    cache: dict[tuple[frozenset[int], frozenset[int]], int] = {}
    best: tuple | None = None
    visited = 0

    def visit(seq: tuple[int, ...], vertices: frozenset[int], edges: frozenset[int]) -> None:
        nonlocal best, visited
        visited += 1
        key = (vertices, edges)
        cost = cache.get(key)
        if cost is None:
            tree = verify_spanning_tree(g, star_edges(sw, CoreSubtree(seq, vertices, edges)))
            cost = routing_cost_edges(tree, sw.scaled, Unit.SCALED).value
            cache[key] = cost
        cand = (cost, len(seq), seq)
        if best is None or cand < best:
            best = cand
        if len(seq) == max_len:
            return
        members = sorted(vertices)
        for v in range(g.n):
            if v in vertices:
                continue
            path = sw.path(v, closest(sw, v, members))
            visit(seq + (v,), vertices | frozenset(path), edges | frozenset(_path_edges(g, path)))

    visit((first,), frozenset((first,)), frozenset())
    assert best is not None
    return best, visited


def approx_mrct(
    sw: ScaledWeights,
    params: ApproxParams,
    workers: int = 1,
    prune: bool = True,
    budget: int | None = None,
) -> ApproxResult:
    """Cheapest general star over all sequences of at most ``r + 4`` vertices.

    Ties go to the lexicographically smallest ``(k, S)``.  ``prune=False``
    evaluates every sequence in ``V^k`` literally; the result is identical.
    """
    n = sw.n
    if budget is not None and candidate_count(n, params.max_len) > budget:
        raise BudgetExceeded(
            f"{candidate_count(n, params.max_len)} candidate sequences exceed the budget of {budget}"
        )
    _ = sw.shortest_paths  # computed once, shipped to workers
    if prune:
        parts = parallel_map(_best_from, [(sw, v, params.max_len) for v in range(n)], workers)
        best = min(p[0] for p in parts)
        visited = sum(p[1] for p in parts)
    else:
        seqs = [s for k in range(1, params.max_len + 1) for s in itertools.product(range(n), repeat=k)]
        costs = parallel_map(_literal_cost, [(sw, s) for s in seqs], workers)
        best = min((c, len(s), s) for c, s in zip(costs, seqs))
        visited = len(seqs)
    _, _, seq = best
    tree = build_star(sw, seq)
    return ApproxResult(
        tree=tree,
        scaled_cost=routing_cost_edges(tree, sw.scaled, Unit.SCALED),
        original_cost=routing_cost_edges(tree, sw.graph.weights),
        sequence=seq,
        guarantee=params.guarantee(n),
        candidates=visited,
    )


def _literal_cost(args: tuple[ScaledWeights, tuple[int, ...]]) -> int:
    sw, seq = args
    return routing_cost_edges(build_star(sw, seq), sw.scaled, Unit.SCALED).value


def parallel_mrct(
    g: Graph,
    epsilon: Fraction | int | str,
    cfg: PerturbationConfig,
    workers: int = 1,
    budget: int | None = None,
) -> ApproxResult | Fail | Disconnected:
    """One randomized trial of the approximation.

    Identically-zero weights are replaced by unit weights before perturbing;
    any spanning tree then has original cost 0.
    """
    if not is_connected(g):
        return Disconnected()
    params = ApproxParams.from_epsilon(epsilon)
    work = g
    if all(w == 0 for w in g.weights):
        work = g.with_weights([1] * g.m)
    sw = perturb(work, cfg)
    if not sw.is_unique:
        return Fail(sw.report, cfg.seed)
    res = approx_mrct(sw, params, workers=workers, budget=budget)
    tree = verify_spanning_tree(g, res.tree.edge_ids)
    return ApproxResult(
        tree=tree,
        scaled_cost=res.scaled_cost,
        original_cost=routing_cost_edges(tree),
        sequence=res.sequence,
        guarantee=res.guarantee,
        candidates=res.candidates,
        seed=cfg.seed,
    )
