"""Divisions with small total excess, built by recursive separator splitting.

The largest remaining piece is split with a separator oracle; the separator
is copied into both halves, and splitting stops once every piece has fewer
than ``b`` vertices. The leaves form a cover whose clusters pairwise touch
only through shared vertices.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .graph import Graph, connected_components, induce, log2c
from .report import Report
from .separators import (
    SeparatorCertificate,
    bfs_level_separate,
    grid_median_separate,
    prs_separate,
    validate_separator,
)

log = logging.getLogger(__name__)

C_DD = 4.0


class OracleBreach(Exception):
    """The separator oracle returned an invalid or oversized certificate."""

    def __init__(self, reason: str, certificate=None, piece=None):
        super().__init__(reason)
        self.reason = reason
        self.certificate = certificate
        self.piece = piece


@dataclass(frozen=True)
class DivisionParams:
    eps: float
    alpha: float = 0.5
    beta: float = 0.0
    c_sep: float = 1.0
    c_dd: float = C_DD
    b_override: int | None = None

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")
        if self.b_override is not None and self.b_override < 1:
            raise ValueError("b_override must be >= 1")

    def separator_budget(self, m: int) -> float:
        return self.c_sep * m**self.alpha * log2c(m) ** self.beta


@dataclass(frozen=True)
class DivisionSchedule:
    b: int
    c_dd: float
    threshold: float  # unrounded 2 * (c'' / eps * log^beta(1/eps))^(1/(1-alpha))


def division_schedule(params: DivisionParams) -> DivisionSchedule:
    inv = 1.0 / params.eps
    raw = 2.0 * (params.c_dd * inv * log2c(inv) ** params.beta) ** (1.0 / (1.0 - params.alpha))
    b = params.b_override if params.b_override is not None else max(1, math.ceil(raw))
    return DivisionSchedule(b=b, c_dd=params.c_dd, threshold=raw)


@dataclass(frozen=True)
class Division:
    n: int
    clusters: tuple[frozenset[int], ...]
    multiplicity: tuple[int, ...]
    boundary: frozenset[int]
    interior: frozenset[int]
    total_excess: int

    @classmethod
    def from_clusters(cls, n: int, clusters) -> "Division":
        cl = tuple(sorted((frozenset(c) for c in clusters), key=lambda c: (min(c) if c else -1, sorted(c))))
        mult = [0] * n
        for c in cl:
            for v in c:
                mult[v] += 1
        boundary = frozenset(v for v in range(n) if mult[v] >= 2)
        interior = frozenset(v for v in range(n) if mult[v] == 1)
        excess = sum(mult) - n
        return cls(n, cl, tuple(mult), boundary, interior, excess)

    def to_json(self) -> dict:
        return {
            "clusters": [sorted(c) for c in self.clusters],
            "boundary": sorted(self.boundary),
            "total_excess": self.total_excess,
        }


@dataclass
class _Tree:
    sizes: list[int] = field(default_factory=list)
    parents: list[int] = field(default_factory=list)
    leaf: list[bool] = field(default_factory=list)
    separators: list[int] = field(default_factory=list)  # |S| per split, after closure
    closure_added: int = 0


def _close_separator(sub, S: set[int], over: dict[tuple[int, int], int]) -> set[int]:
    """Grow S until every vertex of S brings along the neighbors that dominate it.

    ``over[(x, y)]`` (x < y, global ids) names the endpoint that an earlier
    split kept while dropping the other. From then on the dominated endpoint
    may be duplicated only together with its dominator, so every piece that
    holds it also holds the dominator. Nested leaf sets along every edge are
    exactly what keeps C - C' and C' - C separated for all cluster pairs.
    """
    S = set(S)
    stack = list(S)
    ids = sub.vertices
    while stack:
        v = stack.pop()
        gv = ids[v]
        for u in sub.graph.adj[v]:
            if u in S:
                continue
            gu = ids[u]
            if over.get((gu, gv) if gu < gv else (gv, gu)) == gu:
                S.add(u)
                stack.append(u)
    return S


def _orient(sub, S: set[int], over: dict[tuple[int, int], int]) -> None:
    ids = sub.vertices
    for v in S:
        gv = ids[v]
        for u in sub.graph.adj[v]:
            if u not in S:
                gu = ids[u]
                over.setdefault((gu, gv) if gu < gv else (gv, gu), gv)


def _divide(g: Graph, params: DivisionParams, oracle: Callable) -> tuple[DivisionSchedule, Division, _Tree]:
    sched = division_schedule(params)
    b = sched.b
    tree = _Tree()
    over: dict[tuple[int, int], int] = {}
    # heap entries: (-size, min id, node id, piece)
    heap: list = []

    def push(piece: tuple[int, ...], parent: int) -> None:
        node = len(tree.sizes)
        tree.sizes.append(len(piece))
        tree.parents.append(parent)
        tree.leaf.append(False)
        heapq.heappush(heap, (-len(piece), piece[0] if piece else -1, node, piece))

    leaves = []
    if g.n:
        push(tuple(range(g.n)), -1)
    while heap:
        _, _, node, piece = heapq.heappop(heap)
        if len(piece) < b:
            tree.leaf[node] = True
            leaves.append(piece)
            continue
        sub = induce(g, piece)
        comps = connected_components(sub.graph)
        if len(comps) > 1:
            for comp in comps:
                push(tuple(sorted(sub.to_global(comp))), node)
            continue
        cert = oracle(sub.graph)
        if not isinstance(cert, SeparatorCertificate):
            raise OracleBreach("oracle returned no separator", cert, piece)
        rep = validate_separator(sub.graph, None, cert)
        if not rep.ok:
            raise OracleBreach(f"invalid separator: failed {rep.failed()}", cert, piece)
        budget = params.separator_budget(len(piece))
        if len(cert.S) > budget * (1 + 1e-12):
            raise OracleBreach(f"|S|={len(cert.S)} exceeds budget {budget:.3f}", cert, piece)
        S = _close_separator(sub, cert.S, over)
        left = sub.to_global((cert.A - S) | S)
        right = sub.to_global((cert.B - S) | S)
        if len(left) >= len(piece) or len(right) >= len(piece):
            reason = "separator makes no progress"
            if len(S) > len(cert.S):
                reason += f" after closure added {len(S) - len(cert.S)} vertices"
            raise OracleBreach(reason, cert, piece)
        _orient(sub, S, over)
        tree.closure_added += len(S) - len(cert.S)
        tree.separators.append(len(S))
        push(tuple(sorted(left)), node)
        push(tuple(sorted(right)), node)

    small = sum(1 for p in leaves if 4 * len(p) < b)
    if small:
        log.info("%d of %d leaf pieces are smaller than b/4", small, len(leaves))
    if tree.closure_added:
        log.info("separator closure added %d vertices", tree.closure_added)
    return sched, Division.from_clusters(g.n, leaves), tree


def build_division(g: Graph, params: DivisionParams, oracle: Callable) -> tuple[DivisionSchedule, Division]:
    sched, div, _ = _divide(g, params, oracle)
    return sched, div


def _level(size: int, n: int) -> int:
    """Index i with (3/4)^(i+1) n < size <= (3/4)^i n."""
    i = 0
    nxt = Fraction(3, 4) * n
    while size <= nxt:
        i += 1
        nxt *= Fraction(3, 4)
    return i


def level_table(n: int, tree: _Tree) -> list[tuple[int, int]]:
    """Vertices (with multiplicity) on the level-k cut of the recursion tree.

    The cut at level k consists of the nodes at level >= k whose parent sits
    below level k, plus leaves that stopped above level k.
    """
    if not tree.sizes:
        return []
    levels = [_level(s, n) for s in tree.sizes]
    top = max(levels)
    counts = [0] * (top + 1)
    for node, size in enumerate(tree.sizes):
        p = tree.parents[node]
        lo = levels[p] + 1 if p >= 0 else 0
        hi = top if tree.leaf[node] else levels[node]
        for k in range(lo, hi + 1):
            counts[k] += size
    return list(enumerate(counts))


def excess_profile(g: Graph, params: DivisionParams, oracle: Callable) -> list[tuple[int, int, float]]:
    """Rows ``(level, vertices at level, empirical Delta_k)``."""
    _, _, tree = _divide(g, params, oracle)
    return [(k, c, c / g.n) for k, c in level_table(g.n, tree)]


def divide_with_profile(g: Graph, params: DivisionParams, oracle: Callable):
    sched, div, tree = _divide(g, params, oracle)
    return sched, div, level_table(g.n, tree), tree.separators


# -- validation --------------------------------------------------------------


def validate_division(g: Graph, d: Division, b: int) -> Report:
    rep = Report("division")
    n = g.n
    mult = [0] * n
    in_range = True
    member_of: list[list[int]] = [[] for _ in range(n)]
    for idx, c in enumerate(d.clusters):
        for v in c:
            if 0 <= v < n:
                mult[v] += 1
                member_of[v].append(idx)
            else:
                in_range = False
    rep.add("in_range", in_range)
    uncovered = [v for v in range(n) if mult[v] == 0]
    rep.add("cover", not uncovered, f"{len(uncovered)} uncovered" if uncovered else "")
    big = [len(c) for c in d.clusters if len(c) > b]
    rep.add("size", not big, f"largest {max(big)} > b={b}" if big else "")

    # C\C' and C'\C are joined by edge uv iff some cluster holds u but not v
    # and some other cluster holds v but not u.
    bad = None
    for u, v in g.edges():
        cu, cv = set(member_of[u]), set(member_of[v])
        if cu - cv and cv - cu:
            bad = (u, v)
            break
    rep.add("separation", bad is None, "" if bad is None else f"edge {bad[0]}-{bad[1]} crosses private parts")

    interior = [v for v in range(n) if mult[v] == 1]
    leak = next(
        ((v, w) for v in interior for w in g.adj[v] if w not in d.clusters[member_of[v][0]]),
        None,
    )
    rep.add("interior_locality", leak is None, "" if leak is None else f"neighbor {leak[1]} of interior {leak[0]} escapes")

    consistent = (
        tuple(mult) == tuple(d.multiplicity)
        and d.total_excess == sum(mult) - n
        and d.boundary == frozenset(v for v in range(n) if mult[v] >= 2)
        and d.interior == frozenset(interior)
    )
    rep.add("excess_consistency", consistent, f"total_excess={d.total_excess}, recomputed {sum(mult) - n}")
    return rep


def weakly_hyperfinite_check(g: Graph, d: Division, b: int | None = None) -> Report:
    rep = Report("weakly_hyperfinite")
    limit = b if b is not None else max((len(c) for c in d.clusters), default=0)
    rest = set(range(g.n)) - d.boundary
    comps = connected_components(g, within=rest)
    home = {}
    for idx, c in enumerate(d.clusters):
        for v in c:
            home.setdefault(v, idx)
    stray = [c for c in comps if not all(c <= d.clusters[home[v]] for v in c if v in home)]
    rep.add("components_in_one_cluster", not stray, f"{len(stray)} components span clusters" if stray else "")
    big = max((len(c) for c in comps), default=0)
    rep.add("components_small", big <= limit, f"largest component {big}, b={limit}")
    return rep


# -- oracles -----------------------------------------------------------------


def prs_oracle(l: int, h: int) -> Callable[[Graph], object]:
    def oracle(piece: Graph):
        return prs_separate(piece, l, h)

    return oracle


def make_oracle(name: str) -> Callable:
    """``grid-median``, ``bfs-level``, ``prs:L,H`` or ``module:function``."""
    if name == "grid-median":
        return grid_median_separate
    if name == "bfs-level":
        return bfs_level_separate
    if name.startswith("prs:"):
        l, h = (int(x) for x in name[4:].split(","))
        return prs_oracle(l, h)
    if ":" in name:
        import importlib

        mod, fn = name.split(":", 1)
        try:
            return getattr(importlib.import_module(mod), fn)
        except (ImportError, AttributeError) as exc:
            raise ValueError(f"cannot load oracle {name!r}: {exc}") from None
    raise ValueError(f"unknown oracle {name!r}")


__all__ = [
    "C_DD",
    "Division",
    "DivisionParams",
    "DivisionSchedule",
    "OracleBreach",
    "build_division",
    "divide_with_profile",
    "division_schedule",
    "excess_profile",
    "level_table",
    "make_oracle",
    "validate_division",
    "weakly_hyperfinite_check",
]
