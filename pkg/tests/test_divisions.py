import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cheating_oracle import half_separator, leaky_separator, no_answer
from sepkit.divisions import (
    _divide,
    Division,
    DivisionParams,
    OracleBreach,
    build_division,
    divide_with_profile,
    division_schedule,
    excess_profile,
    make_oracle,
    validate_division,
    weakly_hyperfinite_check,
)
from sepkit.graph import Graph, complete_graph, disjoint_union, grid_graph, induce, path_graph
from sepkit.separators import bfs_level_separate, grid_median_separate


def brute_force_separated(g, clusters):
    """Pairwise definition: no edge joins C minus C' to C' minus C."""
    for i, C in enumerate(clusters):
        for D in clusters[i + 1 :]:
            left, right = C - D, D - C
            for u, v in g.edges():
                if (u in left and v in right) or (u in right and v in left):
                    return False
    return True


def test_schedule_threshold():
    s = division_schedule(DivisionParams(eps=0.5))
    assert s.b == 128 and s.c_dd == 4.0  # 2 * (4 * 2)^2
    assert division_schedule(DivisionParams(eps=0.25)).b == 512
    assert division_schedule(DivisionParams(eps=0.1)).b == 3200
    assert division_schedule(DivisionParams(eps=0.1, b_override=7)).b == 7


@pytest.mark.parametrize(
    "kwargs", [dict(eps=0), dict(eps=1), dict(eps=0.5, alpha=1), dict(eps=0.5, beta=-1), dict(eps=0.5, b_override=0)]
)
def test_params_validation(kwargs):
    with pytest.raises(ValueError):
        DivisionParams(**kwargs)


def test_small_graph_is_one_cluster():
    g = grid_graph(2, 2)
    sched, d = build_division(g, DivisionParams(eps=0.5), grid_median_separate)
    assert sched.b > g.n
    assert d.clusters == (frozenset(range(4)),) and d.total_excess == 0
    assert excess_profile(g, DivisionParams(eps=0.5), grid_median_separate) == [(0, 4, 1.0)]
    assert weakly_hyperfinite_check(g, d, sched.b).ok


def test_path9_hand_trace():
    g = path_graph(9)
    params = DivisionParams(eps=0.5, b_override=4)
    sched, d, levels, seps = divide_with_profile(g, params, bfs_level_separate)
    assert [sorted(c) for c in d.clusters] == [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 8]]
    assert d.boundary == frozenset({2, 4, 6}) and d.total_excess == 3
    assert levels == [(0, 9), (1, 10), (2, 10), (3, 12)]
    assert seps == [1, 1, 1]
    assert validate_division(g, d, 4).ok
    wh = weakly_hyperfinite_check(g, d, 4)
    assert wh.ok
    assert brute_force_separated(g, list(d.clusters))


def test_grid64_eps025():
    g = grid_graph(64, 64)
    sched, d = build_division(g, DivisionParams(eps=0.25), grid_median_separate)
    assert d.total_excess <= 1024
    assert validate_division(g, d, sched.b).ok


def test_excess_shrinks_as_eps_grows():
    g = grid_graph(64, 64)
    excess = [build_division(g, DivisionParams(eps=e), grid_median_separate)[1].total_excess for e in (0.1, 0.25, 0.5)]
    assert excess[0] < excess[1] < excess[2]


def test_grid32_levels_nondecreasing():
    g = grid_graph(32, 32)
    params = DivisionParams(eps=0.5)
    rows = excess_profile(g, params, grid_median_separate)
    counts = [c for _, c, _ in rows]
    assert counts == sorted(counts)
    assert rows[-1][2] <= 1 + params.eps
    _, d = build_division(g, params, grid_median_separate)
    assert counts[-1] == g.n + d.total_excess


def test_disconnected_pieces_split_for_free():
    g = disjoint_union(grid_graph(5, 5), grid_graph(5, 5))
    _, d, _, seps = divide_with_profile(g, DivisionParams(eps=0.5, b_override=30), grid_median_separate)
    assert d.total_excess == 0 and seps == []
    assert len(d.clusters) == 2


def test_validator_catches_injected_faults():
    g = path_graph(6)
    big = Division.from_clusters(6, [range(6)])
    assert not validate_division(g, big, 4)["size"].passed
    uncovered = Division.from_clusters(6, [[0, 1, 2], [3, 4]])
    assert not validate_division(g, uncovered, 4)["cover"].passed
    # 4-cycle split into two edges: each edge's private part touches the other
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    split = Division.from_clusters(4, [[0, 1], [2, 3]])
    rep = validate_division(c4, split, 2)
    assert not rep["separation"].passed and not rep["interior_locality"].passed
    assert not brute_force_separated(c4, list(split.clusters))
    lying = Division(6, big.clusters, big.multiplicity, big.boundary, big.interior, 5)
    assert not validate_division(g, lying, 6)["excess_consistency"].passed


@pytest.mark.parametrize("oracle", [half_separator, leaky_separator, no_answer])
def test_cheating_oracles_are_caught(oracle):
    with pytest.raises(OracleBreach):
        build_division(grid_graph(12, 12), DivisionParams(eps=0.5, b_override=10), oracle)


def test_make_oracle():
    assert make_oracle("grid-median") is grid_median_separate
    assert make_oracle("cheating_oracle:half_separator") is half_separator
    g = grid_graph(10, 10)
    _, d = build_division(g, DivisionParams(eps=0.5, b_override=40, c_sep=40), make_oracle("prs:3,6"))
    assert validate_division(g, d, 40).ok
    for bad in ("nope", "nope:fn", "cheating_oracle:missing"):
        with pytest.raises(ValueError):
            make_oracle(bad)


def test_deterministic():
    g = grid_graph(40, 23)
    p = DivisionParams(eps=0.25)
    assert divide_with_profile(g, p, grid_median_separate) == divide_with_profile(g, p, grid_median_separate)


def test_separator_closure_restores_separation():
    # bfs-level layers on a grid cross earlier layers at single vertices; the
    # plain copy-the-separator recursion would leave edges between private parts
    g = grid_graph(20, 20)
    _, d, tree = _divide(g, DivisionParams(eps=0.5, b_override=40, c_sep=1e9), bfs_level_separate)
    assert tree.closure_added > 0
    assert validate_division(g, d, 40).ok
    assert brute_force_separated(g, list(d.clusters))


def test_grid_median_needs_no_closure():
    _, _, tree = _divide(grid_graph(48, 48), DivisionParams(eps=0.25), grid_median_separate)
    assert tree.closure_added == 0


@pytest.mark.parametrize("n", [3, 6])
def test_cliques_cannot_be_divided(n):
    # every separator of a clique leaves one side empty
    with pytest.raises(OracleBreach, match="no progress"):
        build_division(complete_graph(n), DivisionParams(eps=0.5, b_override=2, c_sep=10.0), bfs_level_separate)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 25), st.integers(2, 25), st.floats(0.3, 1.0), st.integers(8, 80), st.integers(0, 2**31))
def test_bfs_level_divisions_valid_or_refused(r, c, keep, b, seed):
    """Never an invalid division: either every check passes, or the split is
    refused because the closed separator would swallow a side."""
    rng = np.random.default_rng(seed)
    U = [v for v in range(r * c) if rng.random() < keep] or [0]
    g = induce(grid_graph(r, c), U).graph
    params = DivisionParams(eps=0.5, b_override=b, c_sep=float(g.n))  # budget off; checks structure only
    try:
        _, d = build_division(g, params, bfs_level_separate)
    except OracleBreach as exc:
        assert "after closure" in exc.reason
        return
    assert validate_division(g, d, b).ok
    assert brute_force_separated(g, list(d.clusters))
    assert weakly_hyperfinite_check(g, d, b).ok
    assert all(len(cl) < b for cl in d.clusters)
