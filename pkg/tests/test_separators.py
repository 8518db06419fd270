import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepkit.fuzz import random_sparse_graph
from sepkit.graph import Graph, complete_graph, disjoint_union, grid_graph, induce, log2c, path_graph
from sepkit.separators import (
    ExpansionParams,
    ExpansionViolation,
    MissingCoordinatesError,
    SeparatorCertificate,
    ShallowMinorCertificate,
    baseline_separate,
    bfs_level_separate,
    certificate_from_json,
    contract_minor,
    expansion_separate,
    grid_median_separate,
    prs_separate,
    schedule,
    size_bound,
    validate_minor,
    validate_separator,
)


def no_cross_edge(g, cert):
    """Independent scan over every edge of g."""
    return not any((u in cert.A and v in cert.B) or (u in cert.B and v in cert.A) for u, v in g.edges())


def is_clique_minor(g, cert):
    h = len(cert.branch_sets)
    return contract_minor(g, cert).m == h * (h - 1) // 2


def test_k5_gives_singleton_minor():
    g = complete_graph(5)
    cert = prs_separate(g, 1, 5)
    assert isinstance(cert, ShallowMinorCertificate)
    assert sorted(len(s) for s in cert.branch_sets) == [1] * 5
    assert cert.depth == 0 <= 1 * log2c(5)
    assert validate_minor(g, cert).ok
    assert is_clique_minor(g, cert)


@pytest.mark.parametrize("l", [1, 2, 5])
def test_two_paths_need_no_separator(l):
    g = disjoint_union(path_graph(10), path_graph(10))
    cert = prs_separate(g, l, 4)
    assert isinstance(cert, SeparatorCertificate)
    assert cert.S == frozenset()
    assert sorted([len(cert.A), len(cert.B)]) == [10, 10]
    assert validate_separator(g, None, cert).ok


def test_grid20_separator_within_bound():
    g = grid_graph(20, 20)
    cert = prs_separate(g, 4, 10)
    assert isinstance(cert, SeparatorCertificate)
    assert validate_separator(g, None, cert).ok
    assert no_cross_edge(g, cert)
    assert len(cert.S) <= cert.metadata["C_impl"] * size_bound(400, 4, 10)
    assert cert.metadata["bound"] == pytest.approx(400 / 4 + 4 * 4 * 100 * log2c(400))


def test_schedule_example_n4096():
    s = schedule(4096, ExpansionParams(k=1, c=1.0))
    assert s.alpha == Fraction(1, 4)
    assert s.z == pytest.approx(4096**0.25 * 12**0.25)
    assert round(s.z, 2) == 14.89
    assert s.l == 1
    assert 1 - s.alpha == Fraction(3, 4)


def test_k50_violates_declared_expansion():
    with pytest.raises(ExpansionViolation) as info:
        expansion_separate(complete_graph(50), ExpansionParams(k=1, c=0.1))
    cert = info.value.certificate
    assert isinstance(cert, ShallowMinorCertificate)
    assert validate_minor(complete_graph(50), cert).ok


def test_expansion_needs_four_vertices():
    with pytest.raises(ValueError):
        expansion_separate(path_graph(3), ExpansionParams(k=1, c=1.0))


def test_expansion_on_grid_returns_schedule():
    g = grid_graph(30, 30)
    sch, cert = expansion_separate(g, ExpansionParams(k=1, c=0.5))
    assert sch.n == 900 and validate_separator(g, None, cert).ok


def test_precondition_errors():
    with pytest.raises(ValueError):
        prs_separate(path_graph(3), 0, 3)
    with pytest.raises(ValueError):
        prs_separate(path_graph(3), 1, 1)
    with pytest.raises(ValueError):
        ExpansionParams(k=0, c=1.0)
    with pytest.raises(ValueError):
        ExpansionParams(k=1, c=0.0)


def test_grid_median_5x5_takes_middle_column():
    g = grid_graph(5, 5)
    cert = grid_median_separate(g)
    assert cert.S == frozenset(r * 5 + 2 for r in range(5))
    assert len(cert.A) == len(cert.B) == 10
    assert validate_separator(g, None, cert).ok


@pytest.mark.parametrize("r,c", [(3, 7), (8, 2), (6, 6), (1, 9), (11, 13)])
def test_grid_median_uses_short_side(r, c):
    cert = grid_median_separate(grid_graph(r, c))
    assert len(cert.S) == min(r, c)


def test_grid_median_singleton():
    # S = {} with A = {v} would give |A| = |U| > 2/3 |U|
    g = grid_graph(1, 1)
    cert = grid_median_separate(g)
    assert cert.S == frozenset({0}) and not cert.A and not cert.B
    bad = SeparatorCertificate(frozenset(), frozenset({0}), frozenset())
    assert not validate_separator(g, None, bad)["balance_A"].passed


def test_grid_median_needs_coords():
    with pytest.raises(MissingCoordinatesError):
        grid_median_separate(path_graph(4))


def test_bfs_level_path3():
    cert = bfs_level_separate(path_graph(3))
    assert cert.S == frozenset({1}) and {len(cert.A), len(cert.B)} == {1}


def test_baseline_dispatch():
    g = grid_graph(4, 4)
    assert baseline_separate(g, "grid-median") == grid_median_separate(g)
    assert baseline_separate(g, "bfs-level") == bfs_level_separate(g)
    with pytest.raises(ValueError):
        baseline_separate(g, "nope")


def test_validator_catches_cross_edge_and_balance():
    g = path_graph(10)
    good = SeparatorCertificate(frozenset({5}), frozenset(range(5)), frozenset(range(6, 10)))
    assert validate_separator(g, None, good).ok
    leaky = SeparatorCertificate(frozenset(), frozenset(range(5)), frozenset(range(5, 10)))
    assert not validate_separator(g, None, leaky)["separation"].passed
    heavy = SeparatorCertificate(frozenset({7}), frozenset(range(7)), frozenset(range(8, 10)))
    rep = validate_separator(g, None, heavy)
    assert not rep["balance_A"].passed and rep["separation"].passed


def test_validator_catches_bad_minors():
    g = path_graph(6)
    overlap = ShallowMinorCertificate(
        branch_sets=(frozenset({0, 1}), frozenset({1, 2})), centers=(0, 1), depth=1, witness_edges={(0, 1): (0, 1)}
    )
    assert not validate_minor(g, overlap)["disjoint"].passed
    # a 5-vertex path centered at an end has radius 4 > depth 3
    deep = ShallowMinorCertificate(
        branch_sets=(frozenset(range(5)), frozenset({5})), centers=(0, 5), depth=3, witness_edges={(0, 1): (4, 5)}
    )
    rep = validate_minor(g, deep)
    assert not rep["radius"].passed and rep["witness_edges"].passed
    no_edge = ShallowMinorCertificate(
        branch_sets=(frozenset({0}), frozenset({2})), centers=(0, 2), depth=0, witness_edges={(0, 1): (0, 2)}
    )
    assert not validate_minor(g, no_edge)["witness_edges"].passed


def test_certificate_json_roundtrip():
    g = grid_graph(6, 6)
    sep = prs_separate(g, 2, 4)
    assert certificate_from_json(sep.to_json()).S == sep.S
    minor = prs_separate(complete_graph(6), 1, 4)
    back = certificate_from_json(minor.to_json())
    assert back.branch_sets == minor.branch_sets and back.witness_edges == minor.witness_edges


def test_deterministic():
    g = grid_graph(25, 17)
    assert prs_separate(g, 2, 5) == prs_separate(g, 2, 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 120), st.floats(0, 3), st.integers(1, 4), st.integers(2, 9), st.integers(0, 2**31))
def test_either_or_totality(n, density, l, h, seed):
    g = random_sparse_graph(np.random.default_rng(seed), n, int(density * n))
    cert = prs_separate(g, l, h)
    if isinstance(cert, ShallowMinorCertificate):
        assert len(cert.branch_sets) == h
        assert validate_minor(g, cert).ok
        assert cert.depth <= l * log2c(n)
        assert is_clique_minor(g, cert)
    else:
        assert validate_separator(g, None, cert).ok
        assert no_cross_edge(g, cert)
        assert cert.metadata["ratio"] <= cert.metadata["C_impl"]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30), st.data())
def test_grid_median_hereditary_on_subrectangles(r, c, data):
    g = grid_graph(r, c)
    r0 = data.draw(st.integers(0, r - 1))
    c0 = data.draw(st.integers(0, c - 1))
    r1 = data.draw(st.integers(r0, r - 1))
    c1 = data.draw(st.integers(c0, c - 1))
    U = [i * c + j for i in range(r0, r1 + 1) for j in range(c0, c1 + 1)]
    sub = induce(g, U).graph
    cert = grid_median_separate(sub)
    assert validate_separator(sub, None, cert).ok
    assert len(cert.S) <= math.ceil(math.sqrt(len(U))) + 1


def test_baselines_hereditary_on_random_subsets():
    rng = np.random.default_rng(11)
    for _ in range(150):
        r, c = (int(x) for x in rng.integers(2, 20, size=2))
        g = grid_graph(r, c)
        keep = rng.uniform(0.3, 1.0)
        U = [v for v in range(g.n) if rng.random() < keep] or [0]
        sub = induce(g, U).graph
        for kind in ("grid-median", "bfs-level"):
            cert = baseline_separate(sub, kind)
            assert validate_separator(sub, None, cert).ok
            assert len(cert.S) <= math.ceil(math.sqrt(len(U))) + 1
