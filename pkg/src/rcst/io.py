"""Text formats for graphs and trees.

Graph files::

    # comment
    graph <n> <m>
    edge <u> <v> <w>        (m lines)
    req <v> <r>             (optional, repeatable)
    sources <s1> <s2> <p> <q>   (optional)

Tree files::

    tree <n>
    edge <u> <v>            (n-1 lines)
    cost <functional> <value>   (optional, ignored on input)
"""

from __future__ import annotations

from typing import Iterable

from .errors import InvalidGraph, ParseError
from .graph import Graph, SpanningTree, TwoSourceSpec


def _lines(text: bytes | str) -> Iterable[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(0, f"input is not UTF-8: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _ints(lineno: int, fields: list[str], count: int, what: str) -> list[int]:
    if len(fields) != count:
        raise ParseError(lineno, f"'{what}' expects {count} integers, got {len(fields)}")
    out = []
    for f in fields:
        try:
            x = int(f)
        except ValueError:
            raise ParseError(lineno, f"not an integer: {f!r}") from None
        if x < 0:
            raise ParseError(lineno, f"negative number {x}")
        out.append(x)
    return out


def parse_graph(text: bytes | str) -> Graph:
    """Parse and validate a graph file.

    Raises:
        ParseError: with the offending line number; duplicate edges, self-loops,
            out-of-range ids, negative numbers and malformed lines are rejected.
    """
    n = m = -1
    edges: list[tuple[int, int]] = []
    weights: list[int] = []
    reqs: dict[int, int] = {}
    sources: TwoSourceSpec | None = None
    seen: dict[tuple[int, int], int] = {}
    last = 0

    for lineno, fields in _lines(text):
        last = lineno
        key, args = fields[0], fields[1:]
        if n < 0:
            if key != "graph":
                raise ParseError(lineno, "expected 'graph <n> <m>' header")
            n, m = _ints(lineno, args, 2, "graph")
            if n < 1:
                raise ParseError(lineno, "a graph needs at least one vertex")
            continue
        if key == "graph":
            raise ParseError(lineno, "duplicate 'graph' header")
        if key == "edge":
            u, v, w = _ints(lineno, args, 3, "edge")
            if u >= n or v >= n:
                raise ParseError(lineno, f"vertex id out of range 0..{n - 1}")
            if u == v:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ParseError(lineno, f"duplicate edge {u} {v} (first on line {seen[e]})")
            if len(edges) == m:
                raise ParseError(lineno, f"more than the declared {m} edges")
            seen[e] = lineno
            edges.append(e)
            weights.append(w)
        elif key == "req":
            v, r = _ints(lineno, args, 2, "req")
            if v >= n:
                raise ParseError(lineno, f"vertex id out of range 0..{n - 1}")
            if v in reqs:
                raise ParseError(lineno, f"duplicate requirement for vertex {v}")
            reqs[v] = r
        elif key == "sources":
            if sources is not None:
                raise ParseError(lineno, "duplicate 'sources' line")
            s1, s2, p, q = _ints(lineno, args, 4, "sources")
            if s1 >= n or s2 >= n:
                raise ParseError(lineno, f"source id out of range 0..{n - 1}")
            try:
                sources = TwoSourceSpec(s1, s2, p, q)
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")

    if n < 0:
        raise ParseError(last, "missing 'graph <n> <m>' header")
    if len(edges) != m:
        raise ParseError(last, f"declared {m} edges but found {len(edges)}")
    try:
        return Graph(n, tuple(edges), tuple(weights), tuple(reqs.get(v, 0) for v in range(n)), sources)
    except InvalidGraph as exc:
        raise ParseError(last, str(exc)) from None


def format_graph(g: Graph) -> str:
    lines = [f"graph {g.n} {g.m}"]
    lines += [f"edge {u} {v} {w}" for (u, v), w in zip(g.edges, g.weights)]
    lines += [f"req {v} {r}" for v, r in enumerate(g.requirements) if r]
    if g.sources is not None:
        s = g.sources
        lines.append(f"sources {s.s1} {s.s2} {s.p} {s.q}")
    return "\n".join(lines) + "\n"


def parse_tree_edges(text: bytes | str) -> tuple[int, list[tuple[int, int]]]:
    """Read a tree file; returns the declared vertex count and the edge list."""
    n = -1
    edges: list[tuple[int, int]] = []
    last = 0
    for lineno, fields in _lines(text):
        last = lineno
        key, args = fields[0], fields[1:]
        if n < 0:
            if key != "tree":
                raise ParseError(lineno, "expected 'tree <n>' header")
            (n,) = _ints(lineno, args, 1, "tree")
        elif key == "edge":
            u, v = _ints(lineno, args, 2, "edge")
            edges.append((u, v))
        elif key == "cost":
            continue
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")
    if n < 0:
        raise ParseError(last, "missing 'tree <n>' header")
    return n, edges


def format_tree(t: SpanningTree, costs: Iterable[tuple[str, object]] = ()) -> list[str]:
    lines = [f"tree {t.n}"]
    lines += [f"edge {u} {v}" for u, v in t.edges]
    lines += [f"cost {name} {value}" for name, value in costs]
    return lines
