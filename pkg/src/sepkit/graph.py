"""Undirected simple graphs, induced subgraphs and edge-list I/O."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

VertexSet = frozenset  # frozenset[int] of vertex ids over a parent graph


class GraphError(ValueError):
    """Raised for malformed graph input (parse errors, self-loops, duplicates)."""


def log2c(x: float) -> float:
    """Base-2 logarithm, clamped to 1 for x <= 2."""
    if x <= 2:
        return 1.0
    return math.log2(x)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``labels`` maps ids back to the tokens read from a file; ``coords`` holds
    (row, col) lattice positions for grid graphs and their induced pieces.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    coords: tuple[tuple[int, int], ...] | None = field(default=None, compare=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
        coords: Sequence[tuple[int, int]] | None = None,
    ) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(
            n=n,
            adj=tuple(tuple(sorted(s)) for s in nbrs),
            labels=tuple(labels) if labels is not None else None,
            coords=tuple(tuple(c) for c in coords) if coords is not None else None,
        )

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once, as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u < v:
                    yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def check(self) -> None:
        """Assert the simple-undirected invariants; raises GraphError."""
        for u, nb in enumerate(self.adj):
            if len(set(nb)) != len(nb):
                raise GraphError(f"duplicate neighbor at {u}")
            for v in nb:
                if v == u:
                    raise GraphError(f"self-loop at vertex {u}")
                if u not in self.adj_sets[v]:
                    raise GraphError(f"asymmetric adjacency {u}->{v}")


@dataclass(frozen=True)
class InducedSubgraph:
    parent: Graph
    vertices: tuple[int, ...]  # sorted global ids; local id i <-> vertices[i]
    graph: Graph

    @cached_property
    def to_local(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def to_global(self, local: Iterable[int]) -> frozenset[int]:
        vs = self.vertices
        return frozenset(vs[i] for i in local)


def induce(g: Graph, u: Iterable[int]) -> InducedSubgraph:
    verts = tuple(sorted(set(u)))
    if verts and (verts[0] < 0 or verts[-1] >= g.n):
        raise GraphError("vertex id out of range")
    local = {v: i for i, v in enumerate(verts)}
    adj = tuple(
        tuple(local[w] for w in g.adj[v] if w in local) for v in verts
    )
    coords = tuple(g.coords[v] for v in verts) if g.coords is not None else None
    labels = tuple(g.labels[v] for v in verts) if g.labels is not None else None
    sub = Graph(n=len(verts), adj=adj, labels=labels, coords=coords)
    return InducedSubgraph(parent=g, vertices=verts, graph=sub)


def bfs_order(g: Graph, start: Iterable[int], allowed: set[int] | frozenset[int] | None = None) -> dict[int, int]:
    """Distances from a source set, restricted to ``allowed`` when given."""
    dist: dict[int, int] = {}
    q: deque[int] = deque()
    for s in start:
        if s not in dist:
            dist[s] = 0
            q.append(s)
    adj = g.adj
    while q:
        v = q.popleft()
        dv = dist[v] + 1
        for w in adj[v]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dv
                q.append(w)
    return dist


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Components ordered by smallest member."""
    allowed = set(range(g.n)) if within is None else set(within)
    seen: set[int] = set()
    comps = []
    adj = g.adj
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def grid_graph(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    coords = [(r, c) for r in range(rows) for c in range(cols)]
    return Graph.from_edges(rows * cols, edges, coords=coords)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for h in graphs:
        edges.extend((u + off, v + off) for u, v in h.edges())
        off += h.n
    return Graph.from_edges(off, edges)


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated ``u v`` lines; '#' starts a comment line.

    Labels are arbitrary tokens, compacted to ids in first-seen order.
    """
    ids: dict[str, int] = {}
    edges = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        a, b = toks
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at {a!r}")
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {a} {b}")
        seen.add(key)
        edges.append(key)
    labels = sorted(ids, key=ids.get)
    return Graph.from_edges(len(ids), edges, labels=labels)


def load_graph(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def format_edge_list(g: Graph) -> str:
    name = g.labels if g.labels is not None else [str(i) for i in range(g.n)]
    return "".join(f"{name[u]} {name[v]}\n" for u, v in g.edges())
