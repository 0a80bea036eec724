"""Graph and spanning-tree data model."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidGraph, NotATree

Edge = tuple[int, int]


@dataclass(frozen=True)
class TwoSourceSpec:
    """Sources and weight ``lambda = p/q >= 1`` of the weighted two-source cost.

    The fraction is stored in lowest terms.
    """

    s1: int
    s2: int
    p: int = 1
    q: int = 1

    def __post_init__(self) -> None:
        if not (isinstance(self.p, int) and isinstance(self.q, int)) or self.q < 1:
            raise ValueError("lambda must be p/q with positive integers p, q")
        if self.p < self.q:
            raise ValueError(f"lambda = {self.p}/{self.q} is below 1")
        g = gcd(self.p, self.q)
        if g != 1:
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)

    @property
    def lam(self) -> Fraction:
        return Fraction(self.p, self.q)

    @classmethod
    def parse_lambda(cls, s1: int, s2: int, text: str) -> "TwoSourceSpec":
        num, _, den = text.partition("/")
        return cls(s1, s2, int(num), int(den) if den else 1)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with nonnegative integer weights.

    Vertices are ``0..n-1``; edge ``i`` joins ``edges[i]`` (stored with the
    smaller endpoint first) and has weight ``weights[i]``.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    weights: tuple[int, ...] = ()
    requirements: tuple[int, ...] = field(default=())
    sources: TwoSourceSpec | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidGraph("a graph needs at least one vertex")
        edges = tuple((min(u, v), max(u, v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weights", tuple(self.weights))
        reqs = tuple(self.requirements) if self.requirements else (0,) * self.n
        object.__setattr__(self, "requirements", reqs)
        if len(self.weights) != len(edges):
            raise InvalidGraph("one weight per edge is required")
        if len(reqs) != self.n:
            raise InvalidGraph("one requirement per vertex is required")
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraph(f"edge ({u}, {v}) has an out-of-range endpoint")
            if u == v:
                raise InvalidGraph(f"self-loop at {u}")
            if (u, v) in seen:
                raise InvalidGraph(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        for x in self.weights + reqs:
            if not isinstance(x, int) or x < 0:
                raise InvalidGraph(f"weights and requirements must be nonnegative integers, got {x!r}")
        if self.sources is not None:
            for s in (self.sources.s1, self.sources.s2):
                if not 0 <= s < self.n:
                    raise InvalidGraph(f"source {s} out of range")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adjacency[u]`` lists ``(neighbour, edge id)`` in edge-id order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return tuple(tuple(a) for a in adj)

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self.edge_index[(min(u, v), max(u, v))]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def with_weights(self, weights: Sequence[int]) -> "Graph":
        return Graph(self.n, self.edges, tuple(weights), self.requirements, self.sources)

    def subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        ids = sorted(set(edge_ids))
        return Graph(
            self.n,
            tuple(self.edges[i] for i in ids),
            tuple(self.weights[i] for i in ids),
            self.requirements,
            self.sources,
        )

    @property
    def max_weight(self) -> int:
        return max(self.weights, default=0)


def components(g: Graph) -> list[int]:
    """Component label (smallest vertex id in the component) for every vertex."""
    label = [-1] * g.n
    for root in range(g.n):
        if label[root] >= 0:
            continue
        label[root] = root
        stack = [root]
        while stack:
            u = stack.pop()
            for v, _ in g.adjacency[u]:
                if label[v] < 0:
                    label[v] = root
                    stack.append(v)
    return label


def is_connected(g: Graph) -> bool:
    return all(c == 0 for c in components(g))


def zero_weight_subgraph(g: Graph) -> Graph:
    """The spanning subgraph formed by the zero-weight edges."""
    return g.subgraph(i for i, w in enumerate(g.weights) if w == 0)


def spanning_tree_of(g: Graph) -> "SpanningTree":
    """Depth-first spanning tree of a connected graph, started at vertex 0."""
    seen = [False] * g.n
    seen[0] = True
    chosen: list[int] = []
    stack = [0]
    while stack:
        u = stack.pop()
        for v, eid in reversed(g.adjacency[u]):
            if not seen[v]:
                seen[v] = True
                chosen.append(eid)
                stack.append(v)
    return verify_spanning_tree(g, chosen)


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """A validated spanning tree of ``host``, rooted at vertex 0.

    Build instances with :func:`verify_spanning_tree`.
    """

    host: Graph
    edge_ids: tuple[int, ...]
    parent: tuple[int, ...]
    parent_edge: tuple[int, ...]
    order: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.host.n

    @property
    def edges(self) -> list[Edge]:
        return [self.host.edges[i] for i in self.edge_ids]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanningTree):
            return NotImplemented
        return self.host == other.host and self.edge_ids == other.edge_ids

    def __hash__(self) -> int:
        return hash(self.edge_ids)

    @cached_property
    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid in self.edge_ids:
            u, v = self.host.edges[eid]
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return adj

    @cached_property
    def depth(self) -> tuple[int, ...]:
        depth = [0] * self.n
        for v in self.order[1:]:
            depth[v] = depth[self.parent[v]] + 1
        return tuple(depth)

    @cached_property
    def subtree_sizes(self) -> tuple[int, ...]:
        return self.subtree_sums([1] * self.n)

    def subtree_sums(self, values: Sequence[int]) -> tuple[int, ...]:
        acc = list(values)
        for v in reversed(self.order[1:]):
            acc[self.parent[v]] += acc[v]
        return tuple(acc)


def verify_spanning_tree(g: Graph, edges: Iterable[int] | Iterable[Edge]) -> SpanningTree:
    """Validate that ``edges`` (ids or vertex pairs of ``g``) form a spanning tree.

    Raises:
        NotATree: with reason ``cycle``, ``disconnected`` or ``wrong-edge-count``.
    """
    ids: list[int] = []
    for e in edges:
        if isinstance(e, int):
            if not 0 <= e < g.m:
                raise ValueError(f"edge id {e} out of range")
            ids.append(e)
        else:
            ids.append(g.edge_id(*e))
    if len(set(ids)) != len(ids):
        raise NotATree("wrong-edge-count", "an edge is listed twice")

    parent_uf = list(range(g.n))

    def find(x: int) -> int:
        while parent_uf[x] != x:
            parent_uf[x] = parent_uf[parent_uf[x]]
            x = parent_uf[x]
        return x

    for eid in ids:
        u, v = g.edges[eid]
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotATree("cycle", f"edge ({u}, {v}) closes a cycle")
        parent_uf[ru] = rv
    if len(ids) < g.n - 1:
        uncovered = [v for v in range(g.n) if find(v) != find(0)]
        raise NotATree("disconnected", f"vertex {uncovered[0]} is not joined to vertex 0")
    if len(ids) != g.n - 1:
        raise NotATree("wrong-edge-count", f"{len(ids)} edges for {g.n} vertices")

    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid in ids:
        u, v = g.edges[eid]
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    parent = [-1] * g.n
    parent_edge = [-1] * g.n
    order = [0]
    seen = [False] * g.n
    seen[0] = True
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for v, eid in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                parent_edge[v] = eid
                order.append(v)
    return SpanningTree(g, tuple(sorted(ids)), tuple(parent), tuple(parent_edge), tuple(order))
