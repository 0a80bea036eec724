"""Random weight perturbation and exact unique-shortest-path machinery.

Perturbed weights are kept as exact integers in fixed point: an edge of
original weight ``w`` gets ``W = w*D + rho`` with ``D = n**a`` and ``rho``
uniform on ``1..n**b``.  Everything downstream compares ``W`` values only.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .costs import COST_MAX, CostValue, Unit
from .errors import NoneReachable, NotMinUnique, OverflowBound, Unreachable
from .graph import Graph
from .parallel import parallel_map

INF = math.inf

DEFAULT_DENOM_EXP = 10
DEFAULT_NUMER_EXP = 6


@dataclass(frozen=True)
class PerturbationConfig:
    seed: int = 0
    denom_exp: int = DEFAULT_DENOM_EXP
    numer_exp: int = DEFAULT_NUMER_EXP

    def __post_init__(self) -> None:
        if self.denom_exp < 4:
            raise ValueError("denominator exponent must be at least 4")
        if not 1 <= self.numer_exp <= self.denom_exp - 4:
            raise ValueError(
                f"numerator exponent must lie in 1..{self.denom_exp - 4} "
                f"(denominator exponent {self.denom_exp} minus 4)"
            )

    def with_seed(self, seed: int) -> "PerturbationConfig":
        return PerturbationConfig(seed, self.denom_exp, self.numer_exp)


def isolation_failure_bound(n: int, numer_exp: int = DEFAULT_NUMER_EXP) -> Fraction:
    """Upper bound ``n**5 / (2*|W|)`` on the probability that perturbation fails to isolate."""
    return Fraction(n**5, 2 * n**numer_exp)


def overflow_bound(g: Graph, cfg: PerturbationConfig, lam_num: int = 1) -> int:
    """Worst-case magnitude of any scaled cost this library computes for ``g``.

    ``n**3 * (w_max*D + n**b) * max(1, 2*r_max, p + q)``: the routing-cost
    bound for a tree times the largest per-pair multiplier of the three
    functionals.
    """
    n = g.n
    w_max = max(g.max_weight, 1)
    mult = max(1, 2 * max(g.requirements, default=0), lam_num)
    return n**3 * (w_max * n**cfg.denom_exp + n**cfg.numer_exp) * mult


def preflight(g: Graph, cfg: PerturbationConfig, lam_num: int | None = None) -> None:
    """Refuse inputs whose scaled costs could leave the 128-bit range.

    ``lam_num`` is ``p + q`` of the two-source weight, defaulting to the
    graph's own sources (or 2).
    """
    lam = lam_num or 2
    if lam_num is None and g.sources is not None:
        lam = g.sources.p + g.sources.q
    bound = overflow_bound(g, cfg, lam)
    if bound > COST_MAX:
        raise OverflowBound(
            f"worst-case scaled cost {bound} exceeds 2**127-1; "
            f"lower the denominator exponent (currently {cfg.denom_exp})"
        )


@dataclass(frozen=True)
class UniquenessReport:
    is_strongly_min_unique: bool
    witness: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        if self.is_strongly_min_unique != (self.witness is None):
            raise ValueError("witness must be present exactly when uniqueness fails")


@dataclass(frozen=True)
class HopTable:
    """Per-source exact-hop table.

    ``delta[j][x]`` is the least weight of an ``s``-``x`` walk with exactly
    ``j`` edges (``inf`` if none) and ``count[j][x]`` the number of such walks,
    saturated at 2.
    """

    source: int
    delta: list[list[float | int]]
    count: list[list[int]]

    def aggregated(self, k: int) -> list[float | int]:
        """Least weight over walks with at most ``k`` edges, per target."""
        return [min(self.delta[j][x] for j in range(k + 1)) for x in range(len(self.delta[0]))]


@dataclass(frozen=True)
class ScaledWeights:
    """Strictly positive integer weights on ``graph``.

    Produced by :func:`perturb` (then ``scaled[e] == graph.weights[e]*denom + rho[e]``)
    or by :meth:`from_positive` for explicit weights with ``denom == 1``.
    """

    graph: Graph
    scaled: tuple[int, ...]
    denom: int = 1
    rho: tuple[int, ...] | None = None
    config: PerturbationConfig | None = None

    def __post_init__(self) -> None:
        if len(self.scaled) != self.graph.m:
            raise ValueError("one scaled weight per edge is required")
        if any(not isinstance(x, int) or x <= 0 for x in self.scaled):
            raise ValueError("scaled weights must be positive integers")
        if self.rho is not None:
            for w, r, big in zip(self.graph.weights, self.rho, self.scaled):
                if r < 1 or big != w * self.denom + r:
                    raise ValueError("scaled weight is not w*D + rho with rho >= 1")

    @classmethod
    def from_positive(cls, g: Graph, weights: Sequence[int]) -> "ScaledWeights":
        return cls(g, tuple(weights))

    @property
    def n(self) -> int:
        return self.graph.n

    def descaled(self) -> list[int]:
        return [w // self.denom for w in self.scaled]

    @cached_property
    def report(self) -> UniquenessReport:
        return check_strong_min_unique(self)

    @property
    def is_unique(self) -> bool:
        return self.report.is_strongly_min_unique

    @cached_property
    def shortest_paths(self) -> tuple[list[list[float | int]], list[list[int]]]:
        """All-pairs ``(dist, pred)``; ``pred[s][v]`` precedes ``v`` on the ``s``-``v`` path."""
        dists, preds = [], []
        for s in range(self.n):
            d, p = dijkstra(self.graph, self.scaled, s)
            dists.append(d)
            preds.append(p)
        return dists, preds

    @property
    def dist(self) -> list[list[float | int]]:
        return self.shortest_paths[0]

    def path(self, s: int, t: int) -> tuple[int, ...]:
        """Vertices of the computed shortest ``s``-``t`` path; no uniqueness check."""
        pred = self.shortest_paths[1][s]
        if self.dist[s][t] == INF:
            raise Unreachable(s, t)
        out = [t]
        while out[-1] != s:
            out.append(pred[out[-1]])
        return tuple(reversed(out))


def dijkstra(g: Graph, w: Sequence[int], s: int) -> tuple[list[float | int], list[int]]:
    dist: list[float | int] = [INF] * g.n
    pred = [-1] * g.n
    dist[s] = 0
    heap = [(0, s)]
    done = [False] * g.n
    adj = g.adjacency
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, eid in adj[u]:
            nd = d + w[eid]
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
    return dist, pred


def perturb(g: Graph, cfg: PerturbationConfig, lam_num: int | None = None) -> ScaledWeights:
    """Draw the random perturbation for ``g``.

    Uses ``random.Random(cfg.seed)``; ``randint`` samples by rejection, so each
    numerator is exactly uniform on ``1..n**b``.  Draws are made in edge-id order.
    """
    preflight(g, cfg, lam_num)
    n = g.n
    denom = n**cfg.denom_exp
    top = n**cfg.numer_exp
    rng = random.Random(cfg.seed)
    rho = tuple(rng.randint(1, top) for _ in range(g.m))
    scaled = tuple(w * denom + r for w, r in zip(g.weights, rho))
    return ScaledWeights(g, scaled, denom, rho, cfg)


def hop_table(sw: ScaledWeights, s: int) -> HopTable:
    g = sw.graph
    n = g.n
    w = sw.scaled
    delta: list[list[float | int]] = [[INF] * n]
    count = [[0] * n]
    delta[0][s] = 0
    count[0][s] = 1
    for _ in range(1, n):
        prev_d, prev_c = delta[-1], count[-1]
        cur_d: list[float | int] = [INF] * n
        cur_c = [0] * n
        for eid, (a, b) in enumerate(g.edges):
            we = w[eid]
            for u, x in ((a, b), (b, a)):
                if prev_c[u] == 0:
                    continue
                cand = prev_d[u] + we
                if cand < cur_d[x]:
                    cur_d[x] = cand
                    cur_c[x] = prev_c[u]
                elif cand == cur_d[x]:
                    cur_c[x] = min(2, cur_c[x] + prev_c[u])
        delta.append(cur_d)
        count.append(cur_c)
    return HopTable(s, delta, count)


def _first_tie(table: HopTable) -> tuple[int, int] | None:
    """Smallest ``(k, x)`` with two least-weight walks of at most ``k`` edges."""
    n = len(table.delta[0])
    best: list[float | int] = [INF] * n
    mult = [0] * n
    for k in range(n):
        dk, ck = table.delta[k], table.count[k]
        for x in range(n):
            if ck[x] == 0:
                continue
            if dk[x] < best[x]:
                best[x] = dk[x]
                mult[x] = ck[x]
            elif dk[x] == best[x]:
                mult[x] = min(2, mult[x] + ck[x])
        for x in range(n):
            if mult[x] >= 2:
                return k, x
    return None


def _source_witness(args: tuple[ScaledWeights, int]) -> tuple[int, int, int] | None:
    sw, s = args
    tie = _first_tie(hop_table(sw, s))
    return None if tie is None else (s, tie[0], tie[1])


def check_strong_min_unique(sw: ScaledWeights, workers: int = 1) -> UniquenessReport:
    """Exact strong min-uniqueness test.

    A hop bound ``k`` admits two least-weight paths to ``x`` iff the saturated
    walk counts of the exact-hop layers achieving the ``<= k`` minimum add up
    to 2.  Positive weights make every least-weight walk simple, so walk and
    path counts agree.  The witness is the lexicographically smallest
    ``(source, k, x)``.
    """
    witnesses = parallel_map(_source_witness, [(sw, s) for s in range(sw.n)], workers)
    found = [w for w in witnesses if w is not None]
    if not found:
        return UniquenessReport(True)
    return UniquenessReport(False, min(found))


def find_path(sw: ScaledWeights, s: int, t: int) -> tuple[tuple[int, ...], CostValue]:
    """The unique shortest ``s``-``t`` path (vertices from ``s``) and its scaled weight.

    Raises:
        NotMinUnique: the weights are not strongly min-unique.
        Unreachable: ``t`` is in another component.
    """
    if not sw.is_unique:
        raise NotMinUnique(sw.report)
    return sw.path(s, t), CostValue(int(sw.dist[s][t]), Unit.SCALED)


def closest(sw: ScaledWeights, x: int, targets: Iterable[int]) -> int:
    """Smallest-id member of ``targets`` among those nearest to ``x``."""
    dx = sw.dist[x]
    best = min(((dx[z], z) for z in targets), default=(INF, -1))
    if best[0] == INF:
        raise NoneReachable(f"no target vertex is reachable from {x}")
    return best[1]


def add_path(sw: ScaledWeights, targets: Iterable[int], v: int) -> tuple[int, ...]:
    """Unique shortest path from ``v`` to ``closest(v, targets)``, starting at ``v``."""
    return sw.path(v, closest(sw, v, targets))
