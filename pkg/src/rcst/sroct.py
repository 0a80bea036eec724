"""Sum-requirement optimal communication spanning trees.

The best shortest path tree over all roots is within twice the optimum;
perturbation only adds a vanishing slack that is reported per instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .costs import CostValue, Unit, src_cost
from .errors import NotATree
from .graph import Graph, SpanningTree, is_connected, spanning_tree_of, verify_spanning_tree, zero_weight_subgraph
from .isolation import PerturbationConfig, ScaledWeights, perturb
from .outcomes import Disconnected, Fail
from .parallel import parallel_map


@dataclass(frozen=True)
class SroctResult:
    tree: SpanningTree
    root: int
    scaled_src_cost: CostValue | None
    original_src_cost: CostValue
    guarantee: Fraction
    slack: Fraction
    branch: str
    seed: int | None = None
    perturbation_bound: Fraction = Fraction(0)


def shortest_path_tree(sw: ScaledWeights, root: int) -> SpanningTree:
    """Union of the unique shortest paths from ``root`` to every vertex."""
    g = sw.graph
    pred = sw.shortest_paths[1][root]
    edges = []
    for y in range(g.n):
        if y == root:
            continue
        if pred[y] < 0:
            raise NotATree("disconnected", f"vertex {y} is unreachable from {root}")
        edges.append(g.edge_id(pred[y], y))
    return verify_spanning_tree(g, edges)


def _root_cost(args: tuple[ScaledWeights, int]) -> int:
    sw, root = args
    return src_cost(shortest_path_tree(sw, root), sw.scaled, unit=Unit.SCALED).value


def zero_subgraph_tree(g: Graph) -> SpanningTree | None:
    """Spanning tree of the zero-weight edges, if they connect every vertex."""
    g0 = zero_weight_subgraph(g)
    if not is_connected(g0):
        return None
    t0 = spanning_tree_of(g0)
    return verify_spanning_tree(g, [g.edge_id(u, v) for u, v in t0.edges])


def perturbation_src_bound(sw: ScaledWeights) -> Fraction:
    """Upper bound, in original units, on the s.r.c. cost any tree picks up from the perturbation."""
    g = sw.graph
    n = g.n
    reqs = sorted(g.requirements, reverse=True)
    pair = reqs[0] + reqs[1] if n >= 2 else 0
    max_rho = max(sw.rho or (0,), default=0)
    return Fraction(pair * n**3 * max_rho, 2 * sw.denom)


def src_slack(sw: ScaledWeights) -> Fraction:
    """Relative slack: perturbation bound over the lower bound ``max r(v)`` on every tree's cost."""
    r_max = max(sw.graph.requirements)
    if r_max == 0:
        return Fraction(0)
    return perturbation_src_bound(sw) / r_max


def parallel_sroct(g: Graph, cfg: PerturbationConfig, workers: int = 1) -> SroctResult | Fail | Disconnected:
    if not is_connected(g):
        return Disconnected()
    t0 = zero_subgraph_tree(g)
    if t0 is not None:
        return SroctResult(t0, 0, None, src_cost(t0), Fraction(1), Fraction(0), "zero-subgraph", cfg.seed)
    sw = perturb(g, cfg)
    if not sw.is_unique:
        return Fail(sw.report, cfg.seed)
    _ = sw.shortest_paths
    costs = parallel_map(_root_cost, [(sw, x) for x in range(g.n)], workers)
    cost, root = min(zip(costs, range(g.n)))
    tree = shortest_path_tree(sw, root)
    slack = src_slack(sw)
    return SroctResult(
        tree=verify_spanning_tree(g, tree.edge_ids),
        root=root,
        scaled_src_cost=CostValue(cost, Unit.SCALED),
        original_src_cost=src_cost(tree),
        guarantee=2 * (1 + slack),
        slack=slack,
        branch="perturbed",
        seed=cfg.seed,
        perturbation_bound=perturbation_src_bound(sw),
    )
