"""Exact cost values and the three tree cost functionals.

All functionals count ordered vertex pairs, so ``d(u, v)`` and ``d(v, u)`` are
both included and the diagonal contributes nothing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import CostOverflow
from .graph import SpanningTree, TwoSourceSpec

COST_MAX = (1 << 127) - 1
COST_MIN = -(1 << 127)


def checked(value: int) -> int:
    """Return ``value`` unchanged if it fits in a signed 128-bit integer."""
    if not COST_MIN <= value <= COST_MAX:
        raise CostOverflow(f"cost {value} exceeds the signed 128-bit range")
    return value


class Unit(enum.Enum):
    ORIGINAL = "original"
    SCALED = "scaled"


@dataclass(frozen=True, order=False)
class CostValue:
    """An exact cost tagged with the weight function it was measured in.

    Arithmetic and ordering between different units raise ``TypeError``.
    """

    value: int
    unit: Unit = Unit.ORIGINAL

    def __post_init__(self) -> None:
        checked(self.value)

    def _same(self, other: object) -> "CostValue":
        if not isinstance(other, CostValue):
            return NotImplemented
        if other.unit is not self.unit:
            raise TypeError(f"cannot mix {self.unit.value} and {other.unit.value} costs")
        return other

    def __add__(self, other: "CostValue") -> "CostValue":
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return CostValue(checked(self.value + other.value), self.unit)

    def __sub__(self, other: "CostValue") -> "CostValue":
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return CostValue(checked(self.value - other.value), self.unit)

    def scale(self, factor: int) -> "CostValue":
        return CostValue(checked(self.value * factor), self.unit)

    def __lt__(self, other: "CostValue") -> bool:
        return self.value < self._same(other).value

    def __le__(self, other: "CostValue") -> bool:
        return self.value <= self._same(other).value

    def __gt__(self, other: "CostValue") -> bool:
        return self.value > self._same(other).value

    def __ge__(self, other: "CostValue") -> bool:
        return self.value >= self._same(other).value

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def _weights(t: SpanningTree, weights: Sequence[int] | None) -> Sequence[int]:
    return t.host.weights if weights is None else weights


def tree_distances(t: SpanningTree, source: int, weights: Sequence[int] | None = None) -> list[int]:
    """Weighted tree distance from ``source`` to every vertex."""
    w = _weights(t, weights)
    dist = [-1] * t.n
    dist[source] = 0
    stack = [source]
    adj = t.adjacency
    while stack:
        u = stack.pop()
        for v, eid in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + w[eid]
                stack.append(v)
    return dist


def routing_cost_pairs(
    t: SpanningTree, weights: Sequence[int] | None = None, unit: Unit = Unit.ORIGINAL
) -> CostValue:
    """Routing cost as the direct sum of tree distances over ordered pairs."""
    total = 0
    for s in range(t.n):
        total += sum(tree_distances(t, s, weights))
    return CostValue(checked(total), unit)


def routing_cost_edges(
    t: SpanningTree, weights: Sequence[int] | None = None, unit: Unit = Unit.ORIGINAL
) -> CostValue:
    """Routing cost via the edge-load identity ``sum 2*|A|*|B|*w(e)``.

    ``A`` and ``B`` are the two components left after deleting ``e``; one
    post-order pass over the rooted tree gives every ``|A|``.
    """
    w = _weights(t, weights)
    n = t.n
    size = t.subtree_sizes
    total = 0
    for v in range(1, n):
        a = size[v]
        total += 2 * a * (n - a) * w[t.parent_edge[v]]
    return CostValue(checked(total), unit)


def src_cost_pairs(
    t: SpanningTree,
    weights: Sequence[int] | None = None,
    requirements: Sequence[int] | None = None,
    unit: Unit = Unit.ORIGINAL,
) -> CostValue:
    """Sum-requirement communication cost as a direct ordered-pair sum."""
    r = t.host.requirements if requirements is None else requirements
    total = 0
    for u in range(t.n):
        dist = tree_distances(t, u, weights)
        ru = r[u]
        total += sum((ru + r[v]) * dist[v] for v in range(t.n))
    return CostValue(checked(total), unit)


def src_cost(
    t: SpanningTree,
    weights: Sequence[int] | None = None,
    requirements: Sequence[int] | None = None,
    unit: Unit = Unit.ORIGINAL,
) -> CostValue:
    """Sum-requirement communication cost by edge decomposition.

    A tree edge with sides ``A`` and ``B`` carries every ordered pair across it,
    contributing ``2*w(e)*(|A|*R(B) + |B|*R(A))`` where ``R`` sums requirements.
    """
    w = _weights(t, weights)
    r = t.host.requirements if requirements is None else requirements
    n = t.n
    size = t.subtree_sizes
    req = t.subtree_sums(r)
    r_total = sum(r)
    total = 0
    for v in range(1, n):
        a, ra = size[v], req[v]
        total += 2 * w[t.parent_edge[v]] * (a * (r_total - ra) + (n - a) * ra)
    return CostValue(checked(total), unit)


def two_source_cost(
    t: SpanningTree,
    spec: TwoSourceSpec,
    weights: Sequence[int] | None = None,
    unit: Unit = Unit.ORIGINAL,
) -> CostValue:
    """Weighted two-source routing cost multiplied by the denominator of lambda.

    Returns ``p*sum_v d(s1, v) + q*sum_v d(s2, v)`` for ``lambda = p/q``.
    """
    d1 = sum(tree_distances(t, spec.s1, weights))
    d2 = sum(tree_distances(t, spec.s2, weights))
    return CostValue(checked(spec.p * d1 + spec.q * d2), unit)


def tree_path(
    t: SpanningTree,
    s: int,
    u: int,
    weights: Sequence[int] | None = None,
    unit: Unit = Unit.ORIGINAL,
) -> tuple[tuple[int, ...], CostValue]:
    """The unique simple ``s``-``u`` path in ``t`` (vertices from ``s`` to ``u``) and its weight.

    ``s == u`` gives the trivial path ``(s,)`` of weight 0.
    """
    w = _weights(t, weights)
    depth, parent, pedge = t.depth, t.parent, t.parent_edge
    up: list[int] = [s]
    down: list[int] = [u]
    total = 0
    a, b = s, u
    while a != b:
        if depth[a] >= depth[b]:
            total += w[pedge[a]]
            a = parent[a]
            up.append(a)
        else:
            total += w[pedge[b]]
            b = parent[b]
            down.append(b)
    down.pop()
    return tuple(up + down[::-1]), CostValue(checked(total), unit)
