import numpy as np
import pytest

from conftest import dense_rank
from qdyadic.css import (
    CommutationError, CssPair, bicycle, bicycle_dimension_formula, bbs_layout, certify_two_block_distance,
    commutes, construction_bbs, construction_main, construction_main_transposed, cross_pair, cyclic_perm,
    hypergraph_product, load_pair, main_commutation_report, optimize_bbs, perm_order, perm_power,
    reed_muller_quasi_dyadic, save_pair, search_bicycle, symmetric_css, verified_pair,
)
from qdyadic.cyclecount import count4_quasi, girth
from qdyadic.dyadic import DyadicMatrix, dyadic_rank
from qdyadic.f2la import BitMatrix
from qdyadic.oracle import css_params


def _rand_dyadic(rng, ell, even=False):
    N = 1 << ell
    while True:
        bits = rng.integers(0, 2, size=N)
        if bits.any() and (not even or bits.sum() % 2 == 0):
            return DyadicMatrix.from_bits(bits)


def test_weight6_cross_pair(cross_supports):
    v, u = cross_supports
    Dv, Du = DyadicMatrix.from_support(4, v), DyadicMatrix.from_support(4, u)
    assert dyadic_rank(Dv) == dyadic_rank(Du) == 6
    pair = cross_pair(Dv, Du)
    assert pair.commute_verified
    p = pair.params()
    assert p.as_tuple() == (16, 4, 4) and p.d_x == p.d_z == 4
    with pytest.raises(CommutationError):
        cross_pair(Dv, DyadicMatrix.identity(4))


def test_symmetric_pairs():
    rng = np.random.default_rng(0)
    for _ in range(20):
        D = _rand_dyadic(rng, 3, even=True)
        pair = symmetric_css(D)
        assert pair.k == 8 - 2 * dyadic_rank(D)
    with pytest.raises(ValueError):
        symmetric_css(DyadicMatrix.from_support(3, [0, 1, 2]))


def test_bicycle_always_commutes_and_dimension_formula():
    rng = np.random.default_rng(1)
    for _ in range(40):
        D1, D2 = _rand_dyadic(rng, 3), _rand_dyadic(rng, 3)
        pair = bicycle(D1, D2)
        assert commutes(pair.hx, pair.hz)
        stacked = np.vstack([D1.expand().to_dense(), D2.expand().to_dense()])
        ker = 8 - dense_rank(stacked)
        assert bicycle_dimension_formula(D1, D2) == 2 * ker
        if dyadic_rank(D1) == dyadic_rank(D2) == 4 and D1.weight % 2 == 0 and D2.weight % 2 == 0:
            assert pair.k == 2 * ker


def test_bicycle_distance_is_not_bounded_by_components():
    # identical components: (e_i, e_i) is a weight-2 logical whatever d(C) is
    D = DyadicMatrix.from_support(3, [0, 1, 2, 4, 5, 6])
    pair = bicycle(D, D)
    assert pair.k > 0 and pair.params().d == 2


def test_hypergraph_product_commutes():
    rng = np.random.default_rng(2)
    for _ in range(100):
        ell = int(rng.integers(1, 3))
        shapes = [(int(rng.integers(1, 3)), int(rng.integers(1, 3))) for _ in range(2)]
        A, B = [[[_rand_dyadic(rng, ell) if rng.random() < 0.8 else None for _ in range(c)] for _ in range(r)]
                for r, c in shapes]
        pair = hypergraph_product(A, B, ell)
        assert commutes(pair.hx, pair.hz)


def test_cyclic_permutations():
    assert cyclic_perm(4) == [1, 2, 3, 0]
    assert perm_power([1, 2, 3, 0], 4) == [0, 1, 2, 3]
    assert perm_order([1, 0, 3, 4, 2]) == 6


def test_construction_main_term_matching():
    rng = np.random.default_rng(3)
    for omega in (1, 2):
        c = cyclic_perm(omega)
        for _ in range(10):
            x, y = rng.integers(0, 8, size=(2, omega)).tolist()
            assert main_commutation_report(omega, x, y, c, c)["symbolic_ok"]
            construction_main(omega, 3, x, y)
    for omega in (3, 4, 5):
        c = cyclic_perm(omega)
        rep = main_commutation_report(omega, [0] * omega, [0] * omega, c, c)
        assert not rep["symbolic_ok"] and rep["numeric_ok"]


def test_construction_main_reports_failures():
    x, y = [0, 1, 2], [0, 0, 4]
    with pytest.raises(CommutationError) as err:
        construction_main(3, 3, x, y)
    diag = err.value.diagnostic
    assert not diag["numeric_ok"] and diag["first_numeric_mismatch"] is not None
    assert diag["first_symbolic_mismatch"]["unmatched_x_y_labels"]
    # sigma = tau^-1 fails too, and permutations must have order omega
    with pytest.raises(CommutationError):
        construction_main(3, 3, x, y, sigma=[1, 2, 0], tau=[2, 0, 1])
    with pytest.raises(ValueError):
        construction_main(3, 3, x, y, sigma=[0, 0, 1])
    with pytest.raises(ValueError):
        construction_main(3, 3, x, y, sigma=[1, 0, 2])


def test_transposed_variant_always_commutes():
    rng = np.random.default_rng(4)
    for _ in range(50):
        omega = int(rng.integers(1, 6))
        x, y = rng.integers(0, 16, size=(2, omega)).tolist()
        pair = construction_main_transposed(omega, 4, x, y)
        assert pair.commute_verified


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_bbs_commutes_with_girth_four(ell):
    rng = np.random.default_rng(ell)
    for v in range(2, 7):
        for _ in range(4):
            x = rng.integers(0, 1 << ell, size=v).tolist()
            base = int(rng.integers(0, 1 << ell))
            pair = construction_bbs(ell, v, base, x)
            assert commutes(pair.hx, pair.hx) and girth(pair.hx_layout) == 4


def test_bbs_layout_shape_and_rows():
    L = bbs_layout(3, 4, 0, [1, 2, 3, 4], rows=2)
    assert L.shape == (2, 8)
    assert [min(c) for c in L.cells[1][::2]] == [4, 1, 2, 3]
    with pytest.raises(ValueError):
        bbs_layout(3, 4, 0, [1, 2, 3])


def test_optimize_bbs_min_is_minimal():
    x, (n4, _) = optimize_bbs(3, 4, rows=3, strategy="min", seed=0)
    assert n4 == 128 == count4_quasi(bbs_layout(3, 4, 0, x, rows=3))
    _, (hi, _) = optimize_bbs(3, 4, rows=3, strategy="max", seed=0)
    assert hi == 672
    rnd = [optimize_bbs(3, 4, rows=3, strategy="random", seed=s)[1][0] for s in range(30)]
    assert min(rnd) >= n4


def test_reed_muller_search_finds_16_6_4():
    res = reed_muller_quasi_dyadic(4, 2, 3, seed=0)
    assert res.found
    L = res.pair.hx_layout
    assert L.shape == (3, 4) and L.ell == 2
    assert res.pair.params().as_tuple() == (16, 6, 4)


def test_two_block_certificate_agrees_with_exact_distance():
    rng = np.random.default_rng(6)
    for _ in range(30):
        pair = bicycle(_rand_dyadic(rng, 3, even=True), _rand_dyadic(rng, 3, even=True))
        if pair.k == 0:
            continue
        p = pair.params()
        cert = certify_two_block_distance(pair, 8)
        assert (cert["d_x"], cert["d_z"]) == (p.d_x, p.d_z)
        low = certify_two_block_distance(pair, p.d - 1)
        assert low["certified_above"] == p.d - 1


def test_bicycle_search_small_target():
    res = search_bicycle(3, 4, 2, seed=0, budget=200, weight_choices=(2, 4, 6))
    assert res.found and res.pair.k == 4
    assert res.pair.params().d >= 2


def test_pair_json_roundtrip(tmp_path, cross_supports):
    v, u = cross_supports
    pair = cross_pair(DyadicMatrix.from_support(4, v), DyadicMatrix.from_support(4, u))
    save_pair(pair, tmp_path / "p.json")
    back = load_pair(tmp_path / "p.json")
    assert back.hx == pair.hx and back.hz == pair.hz and back.kind == "cross"
    dense = CssPair(pair.hx, pair.hz, kind="plain")
    assert CssPair.from_json(dense.to_json()).hz == pair.hz


def test_noncommuting_json_is_rejected():
    A = BitMatrix.from_dense([[1, 1, 0]])
    B = BitMatrix.from_dense([[1, 0, 0]])
    with pytest.raises(CommutationError):
        verified_pair(A, B)
    obj = {"hx": {"dense": [[1, 1, 0]]}, "hz": {"dense": [[1, 0, 0]]}}
    with pytest.raises(CommutationError):
        CssPair.from_json(obj)
    assert css_params(A, BitMatrix.from_dense([[1, 1, 1]])).k == 1
