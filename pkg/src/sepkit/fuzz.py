"""Seeded random graph corpus for certificate fuzzing and calibration."""

from __future__ import annotations

from typing import Iterator, NamedTuple

import numpy as np

from .graph import Graph, complete_graph, disjoint_union, grid_graph


class FuzzCase(NamedTuple):
    name: str
    graph: Graph
    l: int
    h: int


def random_sparse_graph(rng: np.random.Generator, n: int, m: int) -> Graph:
    """Uniform simple graph on n vertices with min(m, n(n-1)/2) edges."""
    m = min(m, n * (n - 1) // 2)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        uv = rng.integers(0, n, size=(2 * (m - len(edges)) + 8, 2))
        for u, v in uv.tolist():
            if u != v:
                edges.add((min(u, v), max(u, v)))
                if len(edges) == m:
                    break
    return Graph.from_edges(n, sorted(edges))


def _size(rng: np.random.Generator, max_n: int) -> int:
    # log-uniform so most cases are small and a few approach max_n
    return int(np.exp(rng.uniform(np.log(2), np.log(max_n))))


def fuzz_corpus(seed: int = 0, count: int = 500, max_n: int = 5000) -> Iterator[FuzzCase]:
    rng = np.random.default_rng(seed)
    for i in range(count):
        kind = ("grid", "sparse", "clique", "union")[i % 4]
        if kind == "grid":
            side_cap = int(np.sqrt(max_n))
            r = int(rng.integers(1, side_cap + 1))
            c = int(rng.integers(1, min(side_cap, max_n // r) + 1))
            g, name = grid_graph(r, c), f"grid{r}x{c}"
        elif kind == "sparse":
            n = _size(rng, max_n)
            m = int(rng.integers(0, 3 * n + 1))
            g, name = random_sparse_graph(rng, n, m), f"sparse{n}m{m}"
        elif kind == "clique":
            k = int(rng.integers(1, 13))
            g, name = complete_graph(k), f"K{k}"
        else:
            parts, names = [], []
            for _ in range(int(rng.integers(2, 5))):
                choice = int(rng.integers(0, 3))
                if choice == 0:
                    r, c = (int(x) for x in rng.integers(1, 25, size=2))
                    parts.append(grid_graph(r, c))
                    names.append(f"grid{r}x{c}")
                elif choice == 1:
                    k = int(rng.integers(1, 13))
                    parts.append(complete_graph(k))
                    names.append(f"K{k}")
                else:
                    n = _size(rng, max_n // 4)
                    parts.append(random_sparse_graph(rng, n, int(rng.integers(0, 3 * n + 1))))
                    names.append(f"sparse{n}")
            g, name = disjoint_union(*parts), "+".join(names)
        l = int(rng.integers(1, 5))
        h = int(rng.integers(2, 13))
        yield FuzzCase(name, g, l, h)
