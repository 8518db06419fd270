"""Balanced vertex separators.

``prs_separate`` either exhibits K_h as a shallow minor or returns a balanced
separator of size O(n/l + l h^2 log n). ``expansion_separate`` drives it with
the parameter schedule for graph classes of polynomial expansion, and
``baseline_separate`` supplies simple hereditary separators for grids and
BFS layerings.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .graph import Graph, bfs_order, connected_components, log2c
from .report import Report

BALANCE = Fraction(2, 3)

# |S| / (n/l + 4 l h^2 log n) peaked at 0.35 over 2000 fuzz graphs
# (scripts/calibrate.py, seeds 0-3); pinned with about 3x headroom.
C_IMPL = 1.0


class ExpansionViolation(Exception):
    """The graph contains a K_h shallow minor, contradicting the declared (c, k)."""

    def __init__(self, certificate: "ShallowMinorCertificate", schedule: "Schedule"):
        super().__init__(
            f"expansion assumption violated: K_{certificate.h} found as a "
            f"{certificate.depth}-shallow minor (c={schedule.c}, k={schedule.k})"
        )
        self.certificate = certificate
        self.schedule = schedule


class MissingCoordinatesError(ValueError):
    pass


@dataclass(frozen=True)
class SeparatorCertificate:
    S: frozenset[int]
    A: frozenset[int]
    B: frozenset[int]
    metadata: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"type": "separator", "S": sorted(self.S), "A": sorted(self.A), "B": sorted(self.B)}
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SeparatorCertificate":
        return cls(
            S=frozenset(data["S"]),
            A=frozenset(data["A"]),
            B=frozenset(data["B"]),
            metadata=data.get("metadata", {}),
        )


@dataclass(frozen=True)
class ShallowMinorCertificate:
    branch_sets: tuple[frozenset[int], ...]
    centers: tuple[int, ...]
    depth: int
    witness_edges: dict  # (i, j) with i < j -> (u, v), u in branch i, v in branch j
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def h(self) -> int:
        return len(self.branch_sets)

    def to_json(self) -> dict:
        h = self.h
        out = {
            "type": "minor",
            "h": h,
            "depth": self.depth,
            "centers": list(self.centers),
            "branch_sets": [sorted(b) for b in self.branch_sets],
            "witness_edges": [
                list(self.witness_edges[(i, j)])
                for i in range(h)
                for j in range(i + 1, h)
                if (i, j) in self.witness_edges
            ],
        }
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ShallowMinorCertificate":
        sets = tuple(frozenset(b) for b in data["branch_sets"])
        h = len(sets)
        pairs = [(i, j) for i in range(h) for j in range(i + 1, h)]
        edges = [tuple(e) for e in data["witness_edges"]]
        centers = data.get("centers") or [min(b) for b in sets]
        return cls(
            branch_sets=sets,
            centers=tuple(centers),
            depth=int(data["depth"]),
            witness_edges=dict(zip(pairs, edges)),
            metadata=data.get("metadata", {}),
        )


def certificate_from_json(data: dict):
    if data.get("type") == "minor":
        return ShallowMinorCertificate.from_json(data)
    if data.get("type") == "separator":
        return SeparatorCertificate.from_json(data)
    raise ValueError(f"unknown certificate type {data.get('type')!r}")


@dataclass(frozen=True)
class ExpansionParams:
    k: int
    c: float

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError("expansion order k must be an integer >= 1")
        if not self.c > 0:
            raise ValueError("expansion constant c must be > 0")


@dataclass(frozen=True)
class Schedule:
    n: int
    k: int
    c: float
    z: float
    l: int
    h: int
    alpha: Fraction
    predicted_size: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "c": self.c,
            "z": self.z,
            "l": self.l,
            "h": self.h,
            "alpha": str(self.alpha),
            "predicted_size": self.predicted_size,
        }


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def schedule(n: int, params: ExpansionParams) -> Schedule:
    k = params.k
    alpha = Fraction(1, 2 * k + 2)
    lg = log2c(n)
    z = (n * lg) ** float(alpha)
    l = max(1, _round_half_up(z / lg))
    h = max(2, math.ceil(params.c * z**k))
    predicted = (n * lg) ** float(1 - alpha)
    return Schedule(n=n, k=k, c=params.c, z=z, l=l, h=h, alpha=alpha, predicted_size=predicted)


def size_bound(n: int, l: int, h: int) -> float:
    return n / l + 4 * l * h * h * log2c(n)


def pack_components(comps: Iterable[frozenset[int]]) -> tuple[frozenset[int], frozenset[int]]:
    """Greedy two-way packing, largest component first onto the lighter side.

    If every component has at most 2/3 of the total, both sides do too.
    """
    order = sorted(comps, key=lambda c: (-len(c), min(c)))
    a: list[int] = []
    b: list[int] = []
    for comp in order:
        (a if len(a) <= len(b) else b).extend(comp)
    return frozenset(a), frozenset(b)


def _within(size: int, total: int, balance: Fraction) -> bool:
    return size * balance.denominator <= balance.numerator * total


def find_clique(g: Graph, h: int) -> list[int] | None:
    """Greedy search for K_h as a subgraph; cheap, and may miss cliques."""
    if h > g.n:
        return None
    adj_sets = g.adj_sets
    hot = {v for v in range(g.n) if len(g.adj[v]) >= h - 1}
    for v in sorted(hot):
        clique = [v]
        cand = set(adj_sets[v]) & hot
        while cand and len(clique) < h:
            w = min(cand, key=lambda x: (-len(adj_sets[x] & cand), x))
            clique.append(w)
            cand &= adj_sets[w]
        if len(clique) == h:
            return sorted(clique)
    return None


def _grow(adj, C: set[int], src, radius: int, lam: float, half: float):
    """Grow BFS balls around ``src`` inside C.

    Returns ``(ball, layer)`` at the first radius where the next layer has at
    most ``lam * |ball|`` vertices, provided the ball holds at most half of C;
    returns None once the ball holds more than half of C.
    """
    ball = set(src)
    frontier = sorted(src)

    def next_layer():
        return {w for v in frontier for w in adj[v] if w in C and w not in ball}

    for _ in range(radius):
        if len(ball) > half:
            return None
        layer = next_layer()
        if len(layer) <= lam * len(ball):
            return ball, layer
        ball |= layer
        frontier = sorted(layer)
    # Only reached with radius == 0 (lam is infinite): every layer counts as thin.
    if len(ball) > half:
        return None
    return ball, next_layer()


def _bfs_tree(adj, root: int, allowed: set[int]) -> tuple[dict[int, int], dict[int, int]]:
    dist = {root: 0}
    parent = {root: root}
    q = deque([root])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if w in allowed and w not in dist:
                dist[w] = dist[v] + 1
                parent[w] = v
                q.append(w)
    return dist, parent


def _radius(g: Graph, members: frozenset[int], center: int) -> int:
    dist = bfs_order(g, [center], members)
    if len(dist) < len(members):
        return math.inf
    return max(dist.values())


def _witness_edges(g: Graph, sets: list[frozenset[int]]) -> dict:
    owner = {}
    for i, s in enumerate(sets):
        for v in s:
            owner[v] = i
    wit = {}
    for i, s in enumerate(sets):
        for u in sorted(s):
            for v in g.adj[u]:
                j = owner.get(v)
                if j is not None and j > i and (i, j) not in wit:
                    wit[(i, j)] = (u, v)
    return wit


def _minor(g: Graph, sets: list[frozenset[int]], centers: list[int], meta: dict) -> ShallowMinorCertificate:
    depth = max((_radius(g, s, c) for s, c in zip(sets, centers)), default=0)
    return ShallowMinorCertificate(
        branch_sets=tuple(sets),
        centers=tuple(centers),
        depth=depth,
        witness_edges=_witness_edges(g, sets),
        metadata=meta,
    )


def _largest(comps: list[frozenset[int]]) -> set[int]:
    return set(max(comps, key=len)) if comps else set()


def prs_separate(g: Graph, l: int, h: int, *, balance: Fraction = BALANCE):
    """Find K_h as an (l log n)-shallow minor of g, or a balanced separator.

    Clique branch sets are shallow BFS trees grown inside the component C that
    is still too large. Each round grows balls of radius D = floor(l log n / 2)
    around every tree's neighborhood in C and around min(C). A ball holding at
    most half of C whose next layer is thin is discarded, its layer joining
    the separator. When every ball exceeds half of C, all of them meet the
    ball around min(C), so a tree of radius <= 2D rooted there reaches every
    existing tree and extends the clique model. Trees no longer adjacent to
    C are released. The separator is the union of the thin layers and the
    live trees once no component exceeds ``balance * n``.
    """
    n = g.n
    if n == 0:
        raise ValueError("prs_separate needs a nonempty graph")
    if l < 1 or h < 2:
        raise ValueError("need l >= 1 and h >= 2")
    if not (Fraction(2, 3) <= balance < 1):
        raise ValueError("balance must lie in [2/3, 1)")
    balance = Fraction(balance)
    lg = log2c(n)
    depth_bound = l * lg
    meta = {"l": l, "h": h, "depth_bound": depth_bound}

    clique = find_clique(g, h)
    if clique is not None:
        sets = [frozenset([v]) for v in clique]
        return _minor(g, sets, clique, meta)

    adj = g.adj
    radius = int(math.floor(depth_bound / 2))
    lam = n ** (1.0 / radius) - 1.0 if radius > 0 else math.inf
    limit = float(balance * n)

    cut: set[int] = set()
    trees: list[tuple[int, frozenset[int]]] = []
    C = _largest(connected_components(g))
    while len(C) > limit:
        sources = []
        live = []
        for center, members in trees:
            src = {w for v in members for w in adj[v] if w in C}
            if src:
                live.append((center, members))
                sources.append(src)
        trees = live
        half = len(C) / 2
        root = min(C)
        for src in sources + [{root}]:
            res = _grow(adj, C, src, radius, lam, half)
            if res is not None:
                ball, layer = res
                cut |= layer
                C -= ball
                C -= layer
                break
        else:
            dist, parent = _bfs_tree(adj, root, C)
            members = {root}
            for src in sources:
                target = min(src, key=lambda w: (dist.get(w, math.inf), w))
                if dist.get(target, math.inf) > 2 * radius:
                    raise RuntimeError("ball intersection argument failed")
                while target not in members:
                    members.add(target)
                    target = parent[target]
            trees.append((root, frozenset(members)))
            if len(trees) == h:
                return _minor(g, [t for _, t in trees], [c for c, _ in trees], meta)
            C -= members
        C = _largest(connected_components(g, within=C))

    sep = set(cut)
    for _, members in trees:
        sep |= members
    comps = connected_components(g, within=set(range(n)) - sep)
    if any(not _within(len(c), n, balance) for c in comps):
        raise RuntimeError("unbalanced residual component")
    a, b = pack_components(comps)
    bound = size_bound(n, l, h)
    meta.update(C_impl=C_IMPL, size=len(sep), bound=bound, ratio=len(sep) / bound)
    return SeparatorCertificate(S=frozenset(sep), A=a, B=b, metadata=meta)


def expansion_separate(g: Graph, params: ExpansionParams) -> tuple[Schedule, SeparatorCertificate]:
    if g.n < 4:
        raise ValueError("expansion_separate needs n >= 4")
    sch = schedule(g.n, params)
    cert = prs_separate(g, sch.l, sch.h)
    if isinstance(cert, ShallowMinorCertificate):
        raise ExpansionViolation(cert, sch)
    return sch, cert


# -- baseline separators -----------------------------------------------------


def _median_line(g: Graph, axis: int):
    key = [c[axis] for c in g.coords]
    counts = Counter(key)
    cum = 0
    for val in sorted(counts):
        cum += counts[val]
        if 2 * cum >= g.n:
            break
    S = frozenset(v for v in range(g.n) if key[v] == val)
    A = frozenset(v for v in range(g.n) if key[v] < val)
    B = frozenset(v for v in range(g.n) if key[v] > val)
    return S, A, B


def grid_median_separate(g: Graph) -> SeparatorCertificate:
    """Median column or row of a lattice piece, whichever is shorter."""
    if g.coords is None:
        raise MissingCoordinatesError("grid-median needs grid coordinates")
    if g.n == 0:
        return SeparatorCertificate(frozenset(), frozenset(), frozenset())
    col = _median_line(g, 1)
    row = _median_line(g, 0)
    S, A, B = col if len(col[0]) <= len(row[0]) else row
    return SeparatorCertificate(S, A, B, {"kind": "grid-median"})


def _pseudo_peripheral(g: Graph, comp: set[int]) -> int:
    dist = bfs_order(g, [min(comp)], comp)
    far = max(dist.values())
    return min(v for v, d in dist.items() if d == far)


def bfs_level_separate(g: Graph, *, balance: Fraction = BALANCE) -> SeparatorCertificate:
    """Thinnest balanced BFS layer from a pseudo-peripheral vertex."""
    n = g.n
    comps = connected_components(g)
    if n == 0:
        return SeparatorCertificate(frozenset(), frozenset(), frozenset())
    big = max(comps, key=len)
    meta = {"kind": "bfs-level"}
    if _within(len(big), n, balance) and len(comps) > 1:
        a, b = pack_components(comps)
        return SeparatorCertificate(frozenset(), a, b, meta)
    rest = [c for c in comps if c is not big]
    rest_size = n - len(big)
    start = _pseudo_peripheral(g, set(big))
    dist = bfs_order(g, [start], big)
    layers: list[list[int]] = [[] for _ in range(max(dist.values()) + 1)]
    for v, d in dist.items():
        layers[d].append(v)
    sizes = [len(x) for x in layers]
    cum = 0
    med = 0
    for i, s in enumerate(sizes):
        cum += s
        if 2 * cum >= len(big):
            med = i
            break
    best = None
    before = 0
    for i, s in enumerate(sizes):
        a = before
        b = len(big) - before - s
        a2, b2 = (a + rest_size, b) if a <= b else (a, b + rest_size)
        if _within(max(a2, b2), n, balance):
            key = (s, abs(i - med), i)
            if best is None or key < best[0]:
                best = (key, i)
        before += s
    i = best[1]
    S = frozenset(layers[i])
    A = frozenset(v for j in range(i) for v in layers[j])
    B = frozenset(v for j in range(i + 1, len(layers)) for v in layers[j])
    extra = frozenset(v for c in rest for v in c)
    if len(A) <= len(B):
        A = A | extra
    else:
        B = B | extra
    return SeparatorCertificate(S, A, B, meta)


def baseline_separate(g: Graph, kind: str) -> SeparatorCertificate:
    if kind == "grid-median":
        return grid_median_separate(g)
    if kind == "bfs-level":
        return bfs_level_separate(g)
    raise ValueError(f"unknown baseline separator {kind!r}")


# -- validators --------------------------------------------------------------


def validate_separator(
    g: Graph,
    u: Iterable[int] | None,
    cert: SeparatorCertificate,
    *,
    balance: Fraction = BALANCE,
) -> Report:
    U = frozenset(range(g.n)) if u is None else frozenset(u)
    S, A, B = cert.S, cert.A, cert.B
    rep = Report("separator")
    rep.add("in_range", all(0 <= v < g.n for v in S | A | B))
    rep.add("subset", (S | A | B) <= U)
    rep.add("disjoint", not (S & A) and not (S & B) and not (A & B))
    rep.add("cover", (S | A | B) == U)
    bad = next(((a, w) for a in sorted(A) if 0 <= a < g.n for w in g.adj[a] if w in B), None)
    rep.add("separation", bad is None, "" if bad is None else f"edge {bad[0]}-{bad[1]} joins A and B")
    rep.add("balance_A", _within(len(A), len(U), balance), f"|A|={len(A)}, |U|={len(U)}")
    rep.add("balance_B", _within(len(B), len(U), balance), f"|B|={len(B)}, |U|={len(U)}")
    return rep


def validate_minor(g: Graph, cert: ShallowMinorCertificate) -> Report:
    rep = Report("minor")
    sets = cert.branch_sets
    h = len(sets)
    rep.add("in_range", all(0 <= v < g.n for s in sets for v in s))
    rep.add("nonempty", all(sets))
    total = sum(len(s) for s in sets)
    rep.add("disjoint", len(frozenset().union(*sets)) == total if sets else True)
    centered = len(cert.centers) == h and all(c in s for c, s in zip(cert.centers, sets))
    rep.add("centers", centered)
    if rep["in_range"].passed:
        radii = [_radius(g, s, c) if c in s else math.inf for s, c in zip(sets, cert.centers)]
        rep.add("connected", all(r != math.inf for r in radii))
        worst = max(radii, default=0)
        rep.add("radius", worst <= cert.depth, f"max radius {worst}, depth {cert.depth}")
        missing = []
        for i in range(h):
            for j in range(i + 1, h):
                e = cert.witness_edges.get((i, j))
                ok = (
                    e is not None
                    and 0 <= e[0] < g.n
                    and 0 <= e[1] < g.n
                    and e[0] in sets[i]
                    and e[1] in sets[j]
                    and g.has_edge(e[0], e[1])
                )
                if not ok:
                    missing.append((i, j))
        rep.add("witness_edges", not missing, f"bad pairs {missing[:5]}" if missing else "")
    return rep


def validate_certificate(g: Graph, cert) -> Report:
    if isinstance(cert, ShallowMinorCertificate):
        return validate_minor(g, cert)
    return validate_separator(g, None, cert)


def contract_minor(g: Graph, cert: ShallowMinorCertificate) -> Graph:
    """Graph on the branch sets, with an edge where some edge of g joins two sets."""
    owner = {v: i for i, s in enumerate(cert.branch_sets) for v in s}
    edges = set()
    for u, v in g.edges():
        i, j = owner.get(u), owner.get(v)
        if i is not None and j is not None and i != j:
            edges.add((min(i, j), max(i, j)))
    return Graph.from_edges(len(cert.branch_sets), sorted(edges))


SeparatorOracle = Callable[[Graph], SeparatorCertificate]
