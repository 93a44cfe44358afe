from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dense_rank
from qdyadic.dyadic import (
    DyadicMatrix, DyadicPermutation, add, dyadic_code_params, dyadic_rank, expand, expand_dense,
    from_one_based, is_subspace_or_coset, mul, perm_mul, rank_census, self_orthogonality_check,
    to_one_based,
)


def signatures(ell):
    N = 1 << ell
    return st.lists(st.integers(0, 1), min_size=N, max_size=N).map(lambda b: DyadicMatrix.from_bits(b))


def test_entry_rule_is_xor_of_indices():
    D = DyadicMatrix.from_support(3, [1, 6])
    M = expand_dense(D)
    sig = D.signature.to_array()
    for x in range(8):
        for y in range(8):
            assert M[x, y] == sig[x ^ y]
    assert np.array_equal(M, M.T)


def test_one_based_conversion():
    assert from_one_based([1, 5, 6]) == [0, 4, 5]
    assert to_one_based([0, 4, 5]) == [1, 5, 6]
    assert DyadicMatrix.from_support(4, [1, 5, 6, 7, 11, 14], one_based=True).support == [0, 4, 5, 6, 10, 13]
    with pytest.raises(ValueError):
        from_one_based([0])


def test_bad_support_rejected():
    with pytest.raises(IndexError):
        DyadicMatrix.from_support(2, [4])
    with pytest.raises(ValueError):
        DyadicMatrix.from_bits([1, 0, 1])


@settings(max_examples=40, deadline=None)
@given(signatures(3), signatures(3))
def test_ring_operations_match_dense(D1, D2):
    A, B = expand_dense(D1), expand_dense(D2)
    assert np.array_equal(expand_dense(mul(D1, D2)), (A.astype(int) @ B) % 2)
    assert np.array_equal(expand_dense(add(D1, D2)), A ^ B)
    assert mul(D1, D2) == mul(D2, D1)
    assert D1 * D2 == mul(D1, D2) and D1 + D2 == add(D1, D2)


@settings(max_examples=40, deadline=None)
@given(signatures(4))
def test_rank_matches_dense_reference(D):
    assert dyadic_rank(D) == dense_rank(expand_dense(D))


def test_permutations_compose_by_xor():
    a, b = DyadicPermutation(3, 5), DyadicPermutation(3, 6)
    assert perm_mul(a, b).shift == 3
    assert expand(a.as_dyadic()).to_dense().sum(axis=1).tolist() == [1] * 8
    assert mul(a.as_dyadic(), a.as_dyadic()) == DyadicMatrix.identity(3)


def test_rank_census_small():
    assert rank_census(1) == {0: 1, 1: 1, 2: 2}
    assert rank_census(2) == {0: 1, 1: 1, 2: 6, 4: 8}
    assert rank_census(3) == {0: 1, 1: 1, 2: 14, 4: 112, 8: 128}


def test_rank_census_ell4():
    assert rank_census(4) == {0: 1, 1: 1, 2: 30, 4: 1120, 6: 896, 8: 30720, 16: 32768}


def test_rank_census_ell2_by_enumeration():
    hist = {}
    for mask in range(16):
        r = dense_rank(expand_dense(DyadicMatrix.from_int(2, mask)))
        hist[r] = hist.get(r, 0) + 1
    assert hist == rank_census(2)


def test_affine_supports_have_rank_N_over_size():
    for ell in (2, 3, 4):
        N = 1 << ell
        for size in (1, 2, 4, 8):
            if size > N:
                continue
            for supp in combinations(range(N), size):
                if is_subspace_or_coset(supp):
                    assert dyadic_rank(DyadicMatrix.from_support(ell, supp)) == N // size


def test_converse_holds_empirically_up_to_ell3():
    # rank N/|S| with |S| a power of two > 1 only for affine supports (no counterexample at ell <= 3)
    for ell in (2, 3):
        N = 1 << ell
        for mask in range(1, 1 << N):
            D = DyadicMatrix.from_int(ell, mask)
            w = D.weight
            if w > 1 and w & (w - 1) == 0 and dyadic_rank(D) == N // w:
                assert is_subspace_or_coset(D.support), D


def test_code_params_for_affine_support():
    D = DyadicMatrix.from_support(3, [0, 1, 2, 3])
    row, dual = dyadic_code_params(D)
    assert tuple(row) == (8, 2, 4) and tuple(dual) == (8, 6, 2)
    row, dual = dyadic_code_params(DyadicMatrix.from_support(3, [5]))
    assert tuple(row) == (8, 8, 1) and tuple(dual) == (8, 0, None)
    with pytest.raises(ValueError):
        dyadic_code_params(DyadicMatrix.from_support(3, [0, 1, 2]))


def test_self_orthogonality_is_even_weight():
    for mask in range(256):
        D = DyadicMatrix.from_int(3, mask)
        assert self_orthogonality_check(D) == (D.weight % 2 == 0)


def test_json_roundtrip():
    D = DyadicMatrix.from_support(4, [0, 4, 5, 6, 10, 13])
    assert DyadicMatrix.from_json(D.to_json()) == D
    assert DyadicMatrix.from_int(4, D.to_int()) == D
