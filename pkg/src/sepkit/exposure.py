"""Shadowing and exposure for segments, with the geometric subroutines used to
bound the density of exposed families.

An object ``o`` sigma-shadows ``o2`` when every point of ``o2`` lies within
``sigma * diam(o2)`` of ``o``. A family is sigma-exposed when no member
shadows another, and (sigma, k)-exposed when each member is shadowed by at
most k others. Segments live in R^d; in R^1 they double as intervals.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .report import Report

TOL = 1e-9  # relative to the larger diameter of the pair
MARGIN = 1e-6  # generators reject pairs this close to the shadow threshold

# Pinned empirical constants (see scripts/calibrate.py for the measurements).
C_PT = 1.0  # intervals through one point: size <= C_PT / sigma^2 (observed max 0.5, scripts/calibrate.py)
C_DENS = 0.25  # planar segments: density_lb <= C_DENS / sigma^6 (observed max 0.11, scripts/calibrate.py)

# Cell-count constants: angle_cluster uses at most K_d / a^(d-1) cells for
# max angle a, ball_cover at most K'_d (r / s)^d balls.
ANGLE_K = {1: 1.0, 2: 1.5 * math.pi, 3: 6.75 * math.pi**2}
COVER_K = {1: 3.0, 2: 4.5 * math.pi, 3: (4 * math.pi / 3) * (1.5 * math.sqrt(3)) ** 3}


@dataclass(frozen=True)
class Segment:
    p: tuple[float, ...]
    q: tuple[float, ...]

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        q = tuple(float(x) for x in self.q)
        if not p or len(p) != len(q):
            raise ValueError("segment endpoints must share a dimension >= 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def dim(self) -> int:
        return len(self.p)

    @property
    def length(self) -> float:
        return math.dist(self.p, self.q)

    @property
    def degenerate(self) -> bool:
        return self.p == self.q

    @property
    def midpoint(self) -> tuple[float, ...]:
        return tuple((a + b) / 2 for a, b in zip(self.p, self.q))

    @property
    def direction(self) -> tuple[float, ...] | None:
        L = self.length
        if L == 0:
            return None
        return tuple((b - a) / L for a, b in zip(self.p, self.q))

    @property
    def bounds(self) -> tuple[float, float]:
        """``(l, r)`` for a 1-d segment read as an interval."""
        return (min(self.p[0], self.q[0]), max(self.p[0], self.q[0]))


def interval(l: float, r: float) -> Segment:
    if r < l:
        raise ValueError("interval needs l <= r")
    return Segment((l,), (r,))


class ExposureCheck(NamedTuple):
    exposed: bool
    offender: tuple[int, int] | None  # (i, j): object i shadows object j


class KExposureCheck(NamedTuple):
    exposed: bool
    counts: list[int]  # counts[j] = number of objects shadowing j


# -- distances and the shadow predicate ---------------------------------------


def point_segment_distance(x: Sequence[float], s: Segment) -> float:
    p, q = s.p, s.q
    v = [b - a for a, b in zip(p, q)]
    vv = sum(c * c for c in v)
    if vv == 0:
        return math.dist(x, p)
    t = sum((xi - a) * c for xi, a, c in zip(x, p, v)) / vv
    t = min(1.0, max(0.0, t))
    return math.dist(x, [a + t * c for a, c in zip(p, v)])


def reach(o: Segment, o2: Segment) -> float:
    """max over points of o2 of the distance to o.

    Distance to a convex set is convex along o2, so an endpoint attains it.
    """
    return max(point_segment_distance(o2.p, o), point_segment_distance(o2.q, o))


def shadows(o: Segment, o2: Segment, sigma: float, tol: float = TOL) -> bool:
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    scale = max(o.length, o2.length)
    return reach(o, o2) <= sigma * o2.length + tol * scale


def _arrays(objs: Sequence[Segment]) -> tuple[np.ndarray, np.ndarray]:
    if not objs:
        return np.zeros((0, 1)), np.zeros((0, 1))
    return np.array([s.p for s in objs], float), np.array([s.q for s in objs], float)


def _point_seg_dist(X: np.ndarray, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """dist[i, j] = distance from point X[j] to segment (P[i], Q[i])."""
    V = Q - P
    vv = np.einsum("ij,ij->i", V, V)
    W = X[None, :, :] - P[:, None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.einsum("ijk,ik->ij", W, V) / vv[:, None]
    t = np.where(vv[:, None] > 0, np.clip(t, 0.0, 1.0), 0.0)
    diff = W - t[:, :, None] * V[:, None, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def reach_matrix(objs: Sequence[Segment]) -> np.ndarray:
    """R[i, j] = reach(objs[i], objs[j])."""
    P, Q = _arrays(objs)
    return np.maximum(_point_seg_dist(P, P, Q), _point_seg_dist(Q, P, Q))


def shadow_matrix(objs: Sequence[Segment], sigma: float, tol: float = TOL) -> np.ndarray:
    """M[i, j] is True when objs[i] sigma-shadows objs[j] (i != j)."""
    n = len(objs)
    if n == 0:
        return np.zeros((0, 0), bool)
    R = reach_matrix(objs)
    L = np.array([s.length for s in objs])
    scale = np.maximum(L[:, None], L[None, :])
    M = R <= sigma * L[None, :] + tol * scale
    np.fill_diagonal(M, False)
    return M


def is_exposed(objs: Sequence[Segment], sigma: float) -> ExposureCheck:
    M = shadow_matrix(objs, sigma)
    hits = np.argwhere(M)
    if len(hits):
        i, j = hits[0]
        return ExposureCheck(False, (int(i), int(j)))
    return ExposureCheck(True, None)


def is_k_exposed(objs: Sequence[Segment], sigma: float, k: int) -> KExposureCheck:
    if k < 0:
        raise ValueError("k must be >= 0")
    counts = [int(c) for c in shadow_matrix(objs, sigma).sum(axis=0)] if objs else []
    return KExposureCheck(all(c <= k for c in counts), counts)


def mutual_exposure_gap(I: Segment, I2: Segment, sigma: float) -> bool:
    """Whether two overlapping, mutually exposing intervals are far apart.

    With the intervals ordered by left endpoint (first ``[l, r]``, second
    ``[l2, r2]``), checks ``l2 - l >= sigma * |first|`` and
    ``r2 - r >= sigma * |second|``.
    """
    (l, r), (l2, r2) = I.bounds, I2.bounds
    if max(l, l2) > min(r, r2):
        raise ValueError("intervals do not overlap")
    if shadows(I, I2, sigma) or shadows(I2, I, sigma):
        raise ValueError("intervals are not mutually sigma-exposing")
    if (l2, r2) < (l, r):
        (l, r), (l2, r2) = (l2, r2), (l, r)
    return abs(l2 - l) >= sigma * (r - l) and abs(r2 - r) >= sigma * (r2 - l2)


# -- constructive subroutines --------------------------------------------------


def _longest_chain(values: Sequence[float], key) -> list[int]:
    tails: list[float] = []  # smallest tail key of a chain of each length
    tail_idx: list[int] = []
    prev = [-1] * len(values)
    for i, v in enumerate(values):
        kv = key(v)
        pos = bisect.bisect_right(tails, kv)
        if pos:
            prev[i] = tail_idx[pos - 1]
        if pos == len(tails):
            tails.append(kv)
            tail_idx.append(i)
        else:
            tails[pos] = kv
            tail_idx[pos] = i
    out = []
    i = tail_idx[-1] if tail_idx else -1
    while i >= 0:
        out.append(i)
        i = prev[i]
    return out[::-1]


def longest_monotone_subsequence(values: Sequence[float]) -> list[int]:
    """Indices of a longest nondecreasing or nonincreasing subsequence.

    Ties favor the nondecreasing one. By Erdos-Szekeres the result has length
    at least ceil(sqrt(n)).
    """
    up = _longest_chain(values, lambda v: v)
    down = _longest_chain(values, lambda v: -v)
    return up if len(up) >= len(down) else down


def project_to_axis(segs: Sequence[Segment], axis: Sequence[float] | None = None) -> list[Segment]:
    """Intervals ``[min, max]`` of each segment's coordinate along ``axis``.

    The default axis is the first coordinate direction.
    """
    out = []
    if axis is not None:
        a = np.asarray(axis, float)
        a = a / np.linalg.norm(a)
    for s in segs:
        if axis is None:
            x, y = s.p[0], s.q[0]
        else:
            x, y = float(np.dot(s.p, a)), float(np.dot(s.q, a))
        out.append(interval(min(x, y), max(x, y)))
    return out


def undirected_angle(u: Sequence[float], v: Sequence[float]) -> float:
    """Angle in [0, pi/2] between two lines with unit directions u, v."""
    c = abs(sum(a * b for a, b in zip(u, v)))
    return math.acos(min(1.0, c))


def angle_cluster_bound(d: int, max_angle: float) -> float:
    return ANGLE_K[d] / max_angle ** (d - 1)


def _canonical(u: tuple[float, ...]) -> tuple[float, ...]:
    # pick the representative of {u, -u} whose last nonzero coordinate is positive
    for c in reversed(u):
        if c != 0:
            return u if c > 0 else tuple(-x for x in u)
    return u


def angle_cluster(segs: Sequence[Segment], max_angle: float) -> list[int]:
    """Cluster ids such that segments sharing an id span an angle <= max_angle.

    Directions are taken up to sign. In the plane the cells are arcs of the
    direction angle mod pi; in R^3 they are latitude bands of width a/2 cut
    into longitude sectors whose arc at the band's widest latitude is <= a/2.
    Degenerate segments share one extra cluster.
    """
    if not 0 < max_angle < math.pi / 2:
        raise ValueError("max_angle must lie in (0, pi/2)")
    if not segs:
        return []
    d = segs[0].dim
    if d not in (1, 2, 3):
        raise ValueError(f"angle_cluster supports d in {{1, 2, 3}}, got {d}")
    cells = []
    for s in segs:
        u = s.direction
        if u is None:
            cells.append(("point",))
            continue
        u = _canonical(u)
        if d == 1:
            cells.append((0,))
        elif d == 2:
            phi = math.atan2(u[1], u[0]) % math.pi
            cells.append((min(int(phi / max_angle), math.ceil(math.pi / max_angle) - 1),))
        else:
            theta = math.acos(max(-1.0, min(1.0, u[2])))  # in [0, pi/2]
            width = max_angle / 2
            band = min(int(theta / width), math.ceil((math.pi / 2) / width) - 1)
            hi = min(math.pi / 2, (band + 1) * width)
            sectors = max(1, math.ceil(2 * math.pi * math.sin(hi) / width))
            phi = math.atan2(u[1], u[0]) % (2 * math.pi)
            cells.append((band, min(int(phi / (2 * math.pi / sectors)), sectors - 1)))
    ids: dict = {}
    return [ids.setdefault(c, len(ids)) for c in cells]


def ball_cover(center: Sequence[float], r: float, small_r: float) -> np.ndarray:
    """Centers of radius-``small_r`` balls covering the radius-``r`` ball.

    Uses the cubic lattice of spacing 2 small_r / sqrt(d) anchored at the
    center; every cube of that lattice fits in a ball of radius small_r.
    """
    c = np.asarray(center, float)
    d = c.size
    if d not in COVER_K:
        raise ValueError(f"ball_cover supports d in {{1, 2, 3}}, got {d}")
    if not 0 < small_r <= r:
        raise ValueError("need 0 < small_r <= r")
    if small_r == r:
        return c[None, :].copy()
    step = 2 * small_r / math.sqrt(d)
    m = math.ceil((r + small_r) / step)
    ticks = np.arange(-m, m + 1) * step
    grid = np.array(list(itertools.product(ticks, repeat=d)))
    keep = np.linalg.norm(grid, axis=1) <= r + small_r
    return c + grid[keep]


# -- shadow graphs and degeneracy --------------------------------------------


@dataclass(frozen=True)
class ShadowGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    degeneracy: int
    coloring: tuple[int, ...]

    @property
    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


def degeneracy_order(n: int, edges) -> tuple[list[int], int]:
    """Repeatedly remove a minimum-degree vertex (lowest id on ties)."""
    adj = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    deg = [len(a) for a in adj]
    removed = [False] * n
    order = []
    degeneracy = 0
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    while heap:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        degeneracy = max(degeneracy, dv)
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, degeneracy


def shadow_graph(objs: Sequence[Segment], sigma: float) -> ShadowGraph:
    M = shadow_matrix(objs, sigma)
    E = M | M.T
    edges = tuple((int(i), int(j)) for i, j in np.argwhere(np.triu(E, 1)))
    return _colored(len(objs), edges)


def _colored(n: int, edges) -> ShadowGraph:
    order, degeneracy = degeneracy_order(n, edges)
    adj = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    color = [-1] * n
    for v in reversed(order):
        used = {color[w] for w in adj[v] if color[w] >= 0}
        color[v] = next(c for c in itertools.count() if c not in used)
    return ShadowGraph(n, tuple(edges), degeneracy, tuple(color))


def degeneracy_partition(sg: ShadowGraph) -> list[list[int]]:
    """Color classes of a greedy coloring in reverse degeneracy order.

    At most ``degeneracy + 1`` parts, each independent in the shadow graph.
    """
    parts: dict[int, list[int]] = {}
    for v, c in enumerate(sg.coloring):
        parts.setdefault(c, []).append(v)
    return [parts[c] for c in sorted(parts)]


# -- density --------------------------------------------------------------------


@dataclass(frozen=True)
class DensityCertificate:
    center: tuple[float, ...]
    radius: float
    hits: tuple[int, ...]

    @property
    def density_lb(self) -> int:
        return len(self.hits)

    def to_json(self, objs: Sequence[Segment] | None = None) -> dict:
        out = {
            "type": "density",
            "center": list(self.center),
            "radius": self.radius,
            "density_lb": self.density_lb,
            "hits": list(self.hits),
        }
        if objs is not None:
            out["witness_segments"] = [[list(objs[i].p), list(objs[i].q)] for i in self.hits]
        return out


def closest_points(s: Segment, t: Segment) -> tuple[np.ndarray, np.ndarray]:
    """Closest pair of points between two segments in R^d."""
    p1, q1 = np.array(s.p), np.array(s.q)
    p2, q2 = np.array(t.p), np.array(t.q)
    d1, d2, r = q1 - p1, q2 - p2, p1 - p2
    a, e, f = d1 @ d1, d2 @ d2, d2 @ r
    if a == 0 and e == 0:
        return p1, p2
    if a == 0:
        return p1, p2 + np.clip(f / e, 0, 1) * d2
    c = d1 @ r
    if e == 0:
        return p1 + np.clip(-c / a, 0, 1) * d1, p2
    b = d1 @ d2
    denom = a * e - b * b
    sp = np.clip((b * f - c * e) / denom, 0, 1) if denom > 1e-15 * a * e else 0.0
    tp = (b * sp + f) / e
    if tp < 0:
        tp, sp = 0.0, np.clip(-c / a, 0, 1)
    elif tp > 1:
        tp, sp = 1.0, np.clip((b - c) / a, 0, 1)
    return p1 + sp * d1, p2 + tp * d2


def candidate_centers(objs: Sequence[Segment]) -> np.ndarray:
    """Endpoints, midpoints and midpoints of closest pairs between segments."""
    if not objs:
        return np.zeros((0, 1))
    P, Q = _arrays(objs)
    pts = [P, Q, (P + Q) / 2]
    pair = [(a + b) / 2 for s, t in itertools.combinations(objs, 2) for a, b in [closest_points(s, t)]]
    if pair:
        pts.append(np.array(pair))
    return np.unique(np.vstack(pts), axis=0)


def density_at(objs: Sequence[Segment], center: Sequence[float], radius: float) -> list[int]:
    """Objects meeting the closed ball whose diameter is at least 2 * radius."""
    return [
        i
        for i, s in enumerate(objs)
        if point_segment_distance(center, s) <= radius + TOL * max(radius, 1e-300)
        and s.length >= 2 * radius
    ]


def density_lower_bound(objs: Sequence[Segment], candidates: np.ndarray | None = None) -> DensityCertificate:
    """Best ball among the candidate centers, with the best radius for each.

    For a fixed center, object i counts for every radius in
    ``[dist_i, length_i / 2]``; the deepest point of these intervals is found
    exactly, and the largest radius achieving it is reported. The result is a
    lower bound on the true density.
    """
    if not objs:
        return DensityCertificate((), 0.0, ())
    centers = candidate_centers(objs) if candidates is None else np.atleast_2d(np.asarray(candidates, float))
    P, Q = _arrays(objs)
    D = _point_seg_dist(centers, P, Q).T  # (centers, objs)
    H = np.array([s.length for s in objs]) / 2
    best = (-1, 0.0, -1)  # (count, radius, center index)
    chunk = max(1, 2_000_000 // (len(objs) ** 2))
    for lo in range(0, len(centers), chunk):
        Dc = D[lo : lo + chunk]
        valid = Dc <= H[None, :]
        # count[c, a] = #{i valid : D[c, i] <= D[c, a] <= H[i]}
        inside = (Dc[:, None, :] <= Dc[:, :, None]) & (Dc[:, :, None] <= H[None, None, :]) & valid[:, None, :]
        counts = np.where(valid, inside.sum(axis=2), -1)
        flat = int(np.argmax(counts))
        ci, a = divmod(flat, counts.shape[1])
        if counts[ci, a] > best[0]:
            best = (int(counts[ci, a]), 0.0, lo + ci)
    count, _, ci = best
    if count <= 0:
        return DensityCertificate(tuple(centers[0]), 0.0, ())
    # recover the radius interval for the winning center: largest radius keeping the count
    d, c = D[ci], centers[ci]
    valid = d <= H
    order = sorted(np.flatnonzero(valid), key=lambda i: d[i])
    top, radius = -1, 0.0
    for a in order:
        r = d[a]
        members = valid & (d <= r) & (H >= r)
        if members.sum() > top:
            top = int(members.sum())
            radius = float(H[members].min())
    hits = density_at(objs, c, radius)
    return DensityCertificate(tuple(float(x) for x in c), radius, tuple(hits))


def validate_density(objs: Sequence[Segment], cert: DensityCertificate) -> Report:
    rep = Report("density")
    bad_meet = [i for i in cert.hits if point_segment_distance(cert.center, objs[i]) > cert.radius * (1 + 1e-9) + 1e-12]
    bad_len = [i for i in cert.hits if objs[i].length < 2 * cert.radius * (1 - 1e-12)]
    rep.add("hits_meet_ball", not bad_meet, f"{bad_meet[:5]}" if bad_meet else "")
    rep.add("hits_large", not bad_len, f"{bad_len[:5]}" if bad_len else "")
    rep.add("distinct", len(set(cert.hits)) == len(cert.hits))
    return rep


# -- generators -----------------------------------------------------------------


def sample_segments(
    rng: np.random.Generator, count: int, d: int, kind: str = "uniform", cone: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint arrays of ``count`` random segments.

    ``uniform``: midpoint in the unit cube, log-uniform length in [0.03, 1].
    ``point``: passes through the origin, each side log-uniform in [0.01, 1].
    ``cone`` restricts the direction to within that angle of the first axis.
    """
    if cone is not None:
        phi = rng.uniform(0, cone, size=count)
        U = np.zeros((count, d))
        U[:, 0] = np.cos(phi)
        if d > 1:
            W = rng.normal(size=(count, d - 1))
            W /= np.linalg.norm(W, axis=1, keepdims=True)
            U[:, 1:] = np.sin(phi)[:, None] * W
        U *= rng.choice([-1.0, 1.0], size=count)[:, None]
    else:
        U = rng.normal(size=(count, d))
        U /= np.linalg.norm(U, axis=1, keepdims=True)
    if kind == "uniform":
        mid = rng.uniform(0, 1, size=(count, d))
        half = 10 ** rng.uniform(-1.5, 0, size=count)[:, None] / 2
        return mid - U * half, mid + U * half
    if kind == "point":
        ab = 10 ** rng.uniform(-2, 0, size=(count, 2))
        return -ab[:, :1] * U, ab[:, 1:] * U
    raise ValueError(f"unknown sampler {kind!r}")


def generate_exposed(
    n_target: int,
    sigma: float,
    d: int,
    seed: int,
    *,
    kind: str = "uniform",
    k: int = 0,
    cone: float | None = None,
    max_tries: int | None = None,
) -> list[Segment]:
    """Greedy random (sigma, k)-exposed family (k = 0: sigma-exposed).

    Candidates are kept only while every member stays shadowed by at most k
    others; candidates within MARGIN of a shadow threshold are rejected.
    """
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    rng = np.random.default_rng(seed)
    tries = max_tries if max_tries is not None else 50 * n_target
    CP, CQ = sample_segments(rng, tries, d, kind, cone)
    kept: list[Segment] = []
    P, Q = np.zeros((0, d)), np.zeros((0, d))
    L: list[float] = []
    counts: list[int] = []
    bounds: list[tuple[float, float]] = []
    for c in range(tries):
        if len(kept) >= n_target:
            break
        s = Segment(CP[c], CQ[c])
        Ls = s.length
        if Ls == 0:
            continue
        if d == 1:
            lo, hi = s.bounds
            into = [max(kl - lo, hi - kh, 0.0) for kl, kh in bounds]
            out = [max(lo - kl, kh - hi, 0.0) for kl, kh in bounds]
        elif len(kept) < 32:
            into = [reach(t, s) for t in kept]  # kept[i] shadows s
            out = [reach(s, t) for t in kept]  # s shadows kept[j]
        else:
            sp, sq = CP[c : c + 1], CQ[c : c + 1]
            into = np.maximum(_point_seg_dist(sp, P, Q)[:, 0], _point_seg_dist(sq, P, Q)[:, 0]).tolist()
            out = np.maximum(_point_seg_dist(P, sp, sq)[0], _point_seg_dist(Q, sp, sq)[0]).tolist()
        near = False
        shadowed_by = 0
        hit = []
        for j, (ri, ro, Lj) in enumerate(zip(into, out, L)):
            scale = MARGIN * max(Lj, Ls)
            if abs(ri - sigma * Ls) <= scale or abs(ro - sigma * Lj) <= scale:
                near = True
                break
            if ri <= sigma * Ls:
                shadowed_by += 1
            if ro <= sigma * Lj:
                hit.append(j)
        if near or shadowed_by > k or any(counts[j] + 1 > k for j in hit):
            continue
        for j in hit:
            counts[j] += 1
        kept.append(s)
        counts.append(shadowed_by)
        L.append(Ls)
        if d == 1:
            bounds.append(s.bounds)
        P, Q = np.vstack([P, CP[c : c + 1]]), np.vstack([Q, CQ[c : c + 1]])
    return kept


def small_angle_theta(sigma: float) -> float:
    """Largest pairwise angle with sin(theta) <= sigma / 4."""
    return math.asin(min(1.0, sigma / 4))


def generate_pencil(n_target: int, sigma: float, d: int, seed: int, max_tries: int | None = None) -> list[Segment]:
    """sigma-exposed segments through the origin with pairwise angle <= theta,
    sin(theta) = sigma / 4, all within theta / 2 of the first axis."""
    theta = small_angle_theta(sigma)
    return generate_exposed(n_target, sigma, d, seed, kind="point", cone=theta / 2, max_tries=max_tries)


def point_cover_family(sigma: float, seed: int, tries: int = 3000) -> list[Segment]:
    """Greedily saturated sigma-exposed intervals that all contain 0."""
    return generate_exposed(10**9, sigma, 1, seed, kind="point", max_tries=tries)


# -- CSV I/O ----------------------------------------------------------------------


class SegmentFormatError(ValueError):
    pass


def parse_segments(text: str) -> list[Segment]:
    """One segment per line: ``x1,y1[,z1],x2,y2[,z2]``, or ``l,r`` for intervals."""
    segs = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vals = [float(x) for x in line.split(",")]
        except ValueError as exc:
            raise SegmentFormatError(f"line {lineno}: {exc}") from None
        if len(vals) % 2 or len(vals) not in (2, 4, 6):
            raise SegmentFormatError(f"line {lineno}: expected 2, 4 or 6 numbers")
        h = len(vals) // 2
        if dim is None:
            dim = h
        elif h != dim:
            raise SegmentFormatError(f"line {lineno}: mixed dimensions")
        if not all(math.isfinite(v) for v in vals):
            raise SegmentFormatError(f"line {lineno}: non-finite coordinate")
        if h == 1:
            a, b = vals
            segs.append(interval(min(a, b), max(a, b)))
        else:
            segs.append(Segment(tuple(vals[:h]), tuple(vals[h:])))
    return segs


def format_segments(segs: Sequence[Segment]) -> str:
    return "".join(",".join(repr(x) for x in (*s.p, *s.q)) + "\n" for s in segs)
