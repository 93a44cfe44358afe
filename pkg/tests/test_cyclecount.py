import numpy as np
import pytest

from qdyadic.cyclecount import (
    ClosedFormNotApplicable, census, count4_quasi, count4_single, count4_single_report, count6_quasi,
    count6_single, count6_single_report, count8_quasi, count8_quasi_scaled, girth, girth_bound_lift,
    has_girth_gt4, n4_lower_bound_single, n6_condition1_single, protograph_girth,
)
from qdyadic.dyadic import DyadicMatrix
from qdyadic.lift import Protograph, QuasiDyadicLayout, expand_layout, protograph_of, tanner_graph
from qdyadic.oracle import INF, enumerate_cycles


def _oracle(L, k_max=8):
    return enumerate_cycles(tanner_graph(expand_layout(L)), k_max)


def test_single_dyadic_golden_counts():
    rep = count4_single_report([0, 1, 2, 3], 3)
    assert rep.classified == {"c": 12, "nc": 24}
    assert count4_single([0, 1, 2, 3], 3) == 72
    assert count6_single([0, 1, 2, 3], 3) == 192
    assert count6_single_report([0, 1, 2, 3], 3).total == 144
    assert (count4_single([0, 1, 2], 2), count6_single([0, 1, 2], 2)) == (6, 16)


@pytest.mark.parametrize("ell", [2, 3])
def test_single_dyadic_matches_oracle(ell):
    rng = np.random.default_rng(ell)
    N = 1 << ell
    for _ in range(25):
        w = int(rng.integers(1, N + 1))
        supp = sorted(rng.choice(N, size=w, replace=False).tolist())
        G = tanner_graph(DyadicMatrix.from_support(ell, supp).expand())
        inv = enumerate_cycles(G, 6)
        assert count4_single(supp, ell) == inv[4]
        assert count6_single(supp, ell) == inv[6]


def test_single_dyadic_bounds():
    for w in range(1, 9):
        supp = list(range(w))
        assert count4_single(supp, 3) >= n4_lower_bound_single(w, 3)
        assert count6_single(supp, 3) >= n6_condition1_single(w, 3)


def test_girth6_layout(girth6_layout):
    assert count4_quasi(girth6_layout) == 0
    assert count6_quasi(girth6_layout) == 96
    assert count8_quasi(girth6_layout) == 944
    assert girth(girth6_layout) == 6
    inv = _oracle(girth6_layout)
    assert (inv[4], inv[6], inv[8]) == (0, 96, 944)
    c = census(girth6_layout, oracle_check=True)
    assert (c.n4, c.n6, c.n8, c.girth) == (0, 96, 944, 6)


def test_closed_forms_match_oracle_when_valid():
    rng = np.random.default_rng(11)
    checked = {4: 0, 6: 0, 8: 0}
    for _ in range(60):
        n_c, n_v, ell = int(rng.integers(2, 4)), int(rng.integers(2, 5)), int(rng.integers(1, 4))
        L = QuasiDyadicLayout.from_shifts(ell, rng.integers(0, 1 << ell, size=(n_c, n_v)).tolist())
        inv = _oracle(L)
        g = girth(L)
        assert has_girth_gt4(L) == (inv[4] == 0)
        for k, f in ((4, count4_quasi), (6, count6_quasi), (8, count8_quasi)):
            if k < 2 * g:
                assert f(L) == inv[k]
                checked[k] += 1
    assert all(checked.values())


def test_fractional_eight_cycle_form_is_refused():
    # N = 1 on a 2x2 all-ones base: the starred term N/4 (R*c + R*nc) is not integral
    L = QuasiDyadicLayout.from_shifts(0, [[0, 0], [0, 0]])
    assert count8_quasi_scaled(L) == 2
    with pytest.raises(ClosedFormNotApplicable):
        count8_quasi(L)


def test_census_hides_invalid_counts():
    L = QuasiDyadicLayout.from_shifts(2, [[0, 0], [0, 0]])
    c = census(L)
    assert (c.girth, c.n4, c.n6, c.n8) == (4, 4, 0, None)
    assert c.as_dict()["valid"] == {"4": True, "6": True, "8": False}


def test_protograph_girth_bound():
    P = Protograph(((1, 1, 1, 1), (1, 1, 1, 1)))
    assert protograph_girth(P) == 4 and girth_bound_lift(P) == 8
    assert protograph_girth(Protograph(((2, 1),))) == 2
    with pytest.raises(ValueError):
        girth_bound_lift(Protograph(((1, 1, 1),)))


def test_single_row_is_acyclic():
    L = QuasiDyadicLayout.from_shifts(3, [[0, 5, 2, 7]])
    assert girth(L) == INF
    assert protograph_of(L).n_v == 4
