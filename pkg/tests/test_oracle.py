import networkx as nx
import numpy as np
import pytest

from qdyadic.f2la import BitMatrix
from qdyadic.lift import tanner_graph
from qdyadic.oracle import (
    INF, BudgetExceeded, absorbing_bruteforce, css_params, enumerate_cycles, four_cycles_by_codegree,
    girth_bfs, min_distance, shortest_cycle_through_edges, two_block_min_logical,
)

HAMMING = np.array([[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]], dtype=np.uint8)


def _nx_cycle_counts(H, k_max):
    m, n = H.shape
    G = nx.Graph()
    G.add_edges_from((c, m + v) for c, v in zip(*np.nonzero(H)))
    counts = {k: 0 for k in range(4, k_max + 1, 2)}
    for cyc in nx.simple_cycles(G, length_bound=k_max):
        if len(cyc) >= 4:
            counts[len(cyc)] += 1
    return counts


def test_complete_bipartite_cycle_counts():
    inv = enumerate_cycles(tanner_graph(np.ones((3, 3), dtype=np.uint8)), 8)
    assert (inv[4], inv[6], inv[8]) == (9, 6, 0)
    inv = enumerate_cycles(tanner_graph(np.ones((2, 4), dtype=np.uint8)), 8)
    assert (inv[4], inv[6], inv[8]) == (6, 0, 0)


@pytest.mark.parametrize("seed", range(8))
def test_cycle_counts_match_networkx(seed):
    rng = np.random.default_rng(seed)
    H = (rng.random((6, 9)) < 0.35).astype(np.uint8)
    inv = enumerate_cycles(tanner_graph(H), 8)
    assert {k: inv[k] for k in (4, 6, 8)} == _nx_cycle_counts(H, 8)


def test_codegree_four_cycles_agree():
    rng = np.random.default_rng(3)
    for _ in range(20):
        H = (rng.random((7, 10)) < 0.4).astype(np.uint8)
        assert four_cycles_by_codegree(H) == enumerate_cycles(tanner_graph(H), 4)[4]


def test_girth_of_cycles_and_trees():
    # H of a 2k-cycle: checks i and i+1 share variable i
    for k in (2, 3, 5):
        H = np.zeros((k, k), dtype=np.uint8)
        for i in range(k):
            H[i, i] = H[(i + 1) % k, i] = 1
        assert girth_bfs(tanner_graph(H)) == 2 * k
    assert girth_bfs(tanner_graph(np.ones((1, 5), dtype=np.uint8))) == INF


def test_shortest_cycle_through_edges():
    H = np.ones((2, 2), dtype=np.uint8)
    G = tanner_graph(H)
    assert shortest_cycle_through_edges(G, [(0, 0)]) == 4
    H = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    assert shortest_cycle_through_edges(tanner_graph(H), [(0, 0), (1, 2)]) == INF


def test_budget_is_hard():
    with pytest.raises(BudgetExceeded):
        enumerate_cycles(tanner_graph(np.ones((4, 4), dtype=np.uint8)), 8, budget=10)


def test_absorbing_bruteforce_on_star():
    # 1 x 3 single check: even subsets are (a, 0) absorbing
    found = absorbing_bruteforce(tanner_graph(np.ones((1, 3), dtype=np.uint8)), 3)
    assert sorted(a for a, _ in found) == [(0, 1), (0, 2), (1, 2)]
    assert all(b == 0 for _, b in found)


def test_distance_of_hamming_and_repetition():
    assert min_distance(BitMatrix.from_dense(HAMMING)) == 3
    rep = np.array([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]], dtype=np.uint8)
    assert min_distance(BitMatrix.from_dense(rep)) == 4
    assert min_distance(BitMatrix.identity(4)) is None


def test_steane_code_parameters():
    H = BitMatrix.from_dense(HAMMING)
    p = css_params(H, H)
    assert p.as_tuple() == (7, 1, 3) and p.d_x == p.d_z == 3


def test_css_params_rejects_noncommuting():
    A = BitMatrix.from_dense(np.array([[1, 0]], dtype=np.uint8))
    with pytest.raises(ValueError):
        css_params(A, A)


def test_two_block_scan_matches_exact_distance():
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 25:
        A = rng.integers(0, 2, size=(4, 8), dtype=np.uint8)
        B = rng.integers(0, 2, size=(4, 8), dtype=np.uint8)
        H = BitMatrix.from_dense(np.hstack([A, B]))
        stab = BitMatrix.zeros(1, 16)
        d = min_distance(H)
        for w in (1, 2, 3, 5):
            got = two_block_min_logical(A, B, stab, w)
            assert got == (d if d is not None and d <= w else None)
        checked += 1
