import numpy as np
import pytest

from qdyadic.absorbing import (
    components, count_1xn, count_allones, count_corollary, is_absorbing, profile_from_bruteforce,
)
from qdyadic.dyadic import DyadicMatrix
from qdyadic.lift import QuasiDyadicLayout, expand_layout, layout_from_blocks, tanner_graph
from qdyadic.oracle import absorbing_bruteforce


def _brute(obj, a_max, connected_only=True):
    if isinstance(obj, DyadicMatrix):
        G = tanner_graph(obj.expand())
    else:
        G = tanner_graph(expand_layout(obj))
    return profile_from_bruteforce(G, a_max, connected_only)


def _block_diagonal(ell, k):
    """Dyadic whose support is the subgroup spanned by the low k bits: 2^(ell-k) copies of K_{2^k,2^k}."""
    return DyadicMatrix.from_support(ell, range(1 << k))


def test_one_by_n_row():
    assert count_1xn(2, 3).total == 12
    for ell, n in [(1, 2), (2, 3), (1, 4), (2, 4)]:
        L = QuasiDyadicLayout.from_shifts(ell, [list(range(n)) if n <= (1 << ell) else [0] * n])
        assert _brute(L, n).counts == count_1xn(ell, n).counts


def test_all_ones():
    assert [count_allones(ell).total for ell in (1, 2, 3)] == [1, 7, 127]
    for ell in (1, 2, 3):
        D = DyadicMatrix.from_support(ell, range(1 << ell))
        assert _brute(D, 1 << ell).counts == count_allones(ell).counts


def test_block_diagonal():
    prof = count_corollary("block-diagonal", ell=3, k=2)
    assert prof.per_a() == {2: 12, 4: 2}
    assert _brute(_block_diagonal(3, 2), 4).counts == prof.counts
    assert _brute(_block_diagonal(3, 1), 2).counts == count_corollary("block-diagonal", ell=3, k=1).counts
    with pytest.raises(ValueError):
        count_corollary("block-diagonal", ell=2, k=3)


def test_identical_blocks_multiplier_is_component_count():
    prof = count_corollary("identical-blocks", m=2, n=3, ell=2)
    assert prof.counts == {(2, 0): 12}
    assert prof.notes["component_count"] == 4
    assert prof.notes["formula_n_times"] == {2: 9}
    assert _brute(QuasiDyadicLayout.from_shifts(2, [[1, 1, 1], [1, 1, 1]]), 3).counts == prof.counts


def test_connectivity_convention_matters():
    L = QuasiDyadicLayout.from_shifts(2, [[0, 1, 2]])
    assert _brute(L, 4, connected_only=True).total == 12
    assert _brute(L, 4, connected_only=False).total == 66


def test_components_of_boundary_layouts():
    rep = components(QuasiDyadicLayout.from_shifts(2, [[0, 3]]))
    assert len(rep.components) == 4 and rep.all_complete and set(rep.shapes()) == {(1, 2)}
    rep = components(layout_from_blocks(2, [[[0, 1], [2]]]))
    assert not rep.all_complete


def test_is_absorbing_matches_definition():
    G = tanner_graph(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8))
    assert is_absorbing(G, [0, 1, 2]) == (True, 0)
    assert is_absorbing(G, [0, 1]) == (False, 2)  # one even, one odd neighbour each
    assert is_absorbing(G, [0]) == (False, 2)
    with pytest.raises(IndexError):
        is_absorbing(G, [5])
    found = {s: b for s, b in absorbing_bruteforce(G, 3)}
    assert found == {(0, 1, 2): 0}
