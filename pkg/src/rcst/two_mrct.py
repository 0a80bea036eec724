"""Weighted two-source routing cost spanning trees.

Vertices are split by which source serves them more cheaply; each side
becomes a shortest path tree toward its source and the two trees are joined
by one edge of the shortest ``s1``-``s2`` path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .costs import CostValue, Unit, two_source_cost
from .errors import ConstructionInvalid, NotATree
from .graph import Graph, SpanningTree, TwoSourceSpec, is_connected, verify_spanning_tree
from .isolation import INF, PerturbationConfig, ScaledWeights, dijkstra, perturb
from .outcomes import Disconnected, Fail
from .parallel import parallel_map
from .sroct import shortest_path_tree, zero_subgraph_tree


@dataclass(frozen=True)
class ZPartition:
    """``d1``/``d2`` are the two service costs multiplied by ``q``."""

    d1: tuple[int, ...]
    d2: tuple[int, ...]
    z1: frozenset[int]
    z2: frozenset[int]


@dataclass(frozen=True)
class QPath:
    vertices: tuple[int, ...]
    bridge_index: int

    @property
    def bridge(self) -> tuple[int, int]:
        j = self.bridge_index
        return self.vertices[j], self.vertices[j + 1]


@dataclass(frozen=True)
class TwoMrctResult:
    tree: SpanningTree
    scaled_cost: CostValue | None
    original_cost: CostValue
    guarantee: Fraction
    slack: Fraction
    branch: str
    partition: ZPartition | None = None
    qpath: QPath | None = None
    seed: int | None = None
    perturbation_bound: Fraction = Fraction(0)


def classify_z(sw: ScaledWeights, spec: TwoSourceSpec) -> ZPartition:
    """Split vertices on ``D1(v) <= D2(v)``, compared after clearing the denominator of lambda."""
    p, q = spec.p, spec.q
    dist = sw.dist
    from_s1, from_s2 = dist[spec.s1], dist[spec.s2]
    gap = from_s1[spec.s2]
    d1 = tuple((p + q) * from_s1[v] + q * gap for v in range(sw.n))
    d2 = tuple((p + q) * from_s2[v] + p * gap for v in range(sw.n))
    z1 = frozenset(v for v in range(sw.n) if d1[v] <= d2[v])
    return ZPartition(d1, d2, z1, frozenset(range(sw.n)) - z1)


def q_path(sw: ScaledWeights, spec: TwoSourceSpec, part: ZPartition) -> QPath:
    path = sw.path(spec.s1, spec.s2)
    for i, v in enumerate(path):
        if v not in part.z1:
            return QPath(path, i - 1)
    raise ValueError("the s1-s2 path never leaves Z1")


def _paths_to(args: tuple[ScaledWeights, int, tuple[int, ...]]) -> list[int]:
    sw, target, members = args
    g = sw.graph
    out: list[int] = []
    for v in members:
        path = sw.path(v, target)
        out.extend(g.edge_id(a, b) for a, b in zip(path, path[1:]))
    return out


def _check_subtree(g: Graph, edge_ids: set[int], span: frozenset[int], which: str) -> None:
    """Raise unless ``edge_ids`` form a tree whose vertex set is exactly ``span``."""
    touched = {x for eid in edge_ids for x in g.edges[eid]} | set(span)
    if touched != set(span):
        raise ConstructionInvalid(which, NotATree("disconnected", "paths leave their side"))
    if len(edge_ids) != len(span) - 1:
        reason = "cycle" if len(edge_ids) >= len(span) else "disconnected"
        raise ConstructionInvalid(which, NotATree(reason, f"{len(edge_ids)} edges on {len(span)} vertices"))
    parent = {v: v for v in span}

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for eid in edge_ids:
        a, b = (find(x) for x in g.edges[eid])
        if a == b:
            raise ConstructionInvalid(which, NotATree("cycle", f"edge {g.edges[eid]}"))
        parent[a] = b


def perturbation_two_source_bound(sw: ScaledWeights, spec: TwoSourceSpec) -> Fraction:
    """Upper bound on the (q-scaled) two-source cost any tree picks up from the perturbation."""
    n = sw.n
    max_rho = max(sw.rho or (0,), default=0)
    return Fraction((spec.p + spec.q) * n * n * max_rho, sw.denom)


def two_source_slack(sw: ScaledWeights, spec: TwoSourceSpec) -> Fraction:
    """Perturbation bound relative to the ``lambda + 1`` lower bound on every tree."""
    return perturbation_two_source_bound(sw, spec) / (spec.p + spec.q)


def weighted_2mrct(
    g: Graph, spec: TwoSourceSpec, cfg: PerturbationConfig, workers: int = 1
) -> TwoMrctResult | Fail | Disconnected:
    if not is_connected(g):
        return Disconnected()
    t0 = zero_subgraph_tree(g)
    if t0 is not None:
        return TwoMrctResult(t0, None, two_source_cost(t0, spec), Fraction(1), Fraction(0), "zero-subgraph", seed=cfg.seed)

    original_gap = dijkstra(g, g.weights, spec.s1)[0][spec.s2]
    sw = perturb(g, cfg, spec.p + spec.q)
    if not sw.is_unique:
        return Fail(sw.report, cfg.seed)

    if original_gap == 0:
        # Sources joined by zero-weight paths: the shortest path tree at s1 is optimal.
        tree = shortest_path_tree(sw, spec.s1)
        return TwoMrctResult(
            tree=verify_spanning_tree(g, tree.edge_ids),
            scaled_cost=two_source_cost(tree, spec, sw.scaled, Unit.SCALED),
            original_cost=two_source_cost(tree, spec),
            guarantee=Fraction(1),
            slack=Fraction(0),
            branch="spt",
            seed=cfg.seed,
        )

    assert original_gap != INF
    part = classify_z(sw, spec)
    qp = q_path(sw, spec, part)
    e1, e2 = parallel_map(
        _paths_to,
        [(sw, spec.s1, tuple(sorted(part.z1))), (sw, spec.s2, tuple(sorted(part.z2)))],
        workers,
    )
    t1, t2 = set(e1), set(e2)
    _check_subtree(g, t1, part.z1, "T1")
    _check_subtree(g, t2, part.z2, "T2")
    bridge = g.edge_id(*qp.bridge)
    try:
        tree = verify_spanning_tree(g, t1 | t2 | {bridge})
    except NotATree as exc:
        raise ConstructionInvalid("T", exc) from None
    slack = two_source_slack(sw, spec)
    return TwoMrctResult(
        tree=tree,
        scaled_cost=two_source_cost(tree, spec, sw.scaled, Unit.SCALED),
        original_cost=two_source_cost(tree, spec),
        guarantee=2 * (1 + slack),
        slack=slack,
        branch="perturbed",
        partition=part,
        qpath=qp,
        seed=cfg.seed,
        perturbation_bound=perturbation_two_source_bound(sw, spec),
    )
