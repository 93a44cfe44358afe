import numpy as np
import pytest

from qdyadic.bpsim import (
    BpDecoder, ChannelModel, SimResult, bp_decode, intervals_disjoint, sample_errors, simulate_classical,
    simulate_css, sweep, wilson_interval,
)
from qdyadic.css import CssPair, cross_pair
from qdyadic.dyadic import DyadicMatrix
from qdyadic.f2la import BitMatrix, BitVector
from qdyadic.lift import expand_layout


def test_zero_syndrome_decodes_to_zero(girth6_layout):
    H = expand_layout(girth6_layout)
    est, ok = bp_decode(H, BitVector.zeros(H.rows), 0.05)
    assert ok and est.weight == 0


def test_all_single_errors_on_girth_six_code(girth6_layout):
    H = expand_layout(girth6_layout)
    dense = H.to_dense()
    dec = BpDecoder(H, 0.02)
    for j in range(H.cols):
        est, ok, _ = dec.decode(dense[:, j])
        assert ok and est.tolist() == [int(i == j) for i in range(H.cols)]


def test_batch_matches_single(girth6_layout):
    H = expand_layout(girth6_layout)
    dense = H.to_dense()
    E = sample_errors(H.cols, 0.04, 3, 0, 50)
    S = (E.astype(int) @ dense.T.astype(int)) % 2
    dec = BpDecoder(H, 0.04)
    est, conv = dec.decode_batch(S)
    for t in range(50):
        e1, ok1, _ = dec.decode(S[t])
        assert ok1 == conv[t] and np.array_equal(e1, est[t])


def test_two_by_two_all_ones_stalls():
    # a single error on K22 is ambiguous: both variables see identical messages and never split
    H = BitMatrix.from_dense(np.ones((2, 2), dtype=np.uint8))
    dec = BpDecoder(H, 0.1, max_iters=20)
    est, ok, it = dec.decode(np.array([1, 1], dtype=np.uint8))
    assert not ok and it == 20 and est[0] == est[1]
    with pytest.raises(ValueError):
        dec.decode(np.array([1], dtype=np.uint8))


def test_cross_pair_single_x_errors_are_corrected(cross_supports):
    v, u = cross_supports
    pair = cross_pair(DyadicMatrix.from_support(4, v), DyadicMatrix.from_support(4, u))
    res = simulate_css(pair, ChannelModel("xz", 0.01), 2000, seed=1)
    assert res.fer < 0.05
    hz = pair.hz.to_dense()
    dec = BpDecoder(pair.hz, 0.01)
    from qdyadic.f2la import RowSpace

    stab = RowSpace(pair.hx)
    fixed = 0
    for j in range(16):
        e = np.zeros(16, dtype=np.uint8)
        e[j] = 1
        est, ok, _ = dec.decode(hz @ e % 2)
        fixed += ok and stab.contains(e ^ est)
    assert fixed == 16


def test_zero_noise_and_validation(girth6_layout):
    H = expand_layout(girth6_layout)
    assert simulate_classical(H, ChannelModel("bsc", 0.0), 100, 0).failures == 0
    with pytest.raises(ValueError):
        ChannelModel("depolarizing", 0.1)
    with pytest.raises(ValueError):
        ChannelModel("bsc", 0.7)
    with pytest.raises(ValueError):
        simulate_classical(H, ChannelModel("xz", 0.1), 10, 0)
    with pytest.raises(ValueError):
        simulate_css(CssPair(H, H), ChannelModel("xz", 0.1), 10, 0)


def test_seeded_runs_are_reproducible_across_batches(girth6_layout):
    H = expand_layout(girth6_layout)
    ch = ChannelModel("bsc", 0.05)
    a = simulate_classical(H, ch, 700, seed=5, batch=64)
    b = simulate_classical(H, ch, 700, seed=5, batch=700)
    assert a.failures == b.failures
    assert np.array_equal(sample_errors(10, 0.3, 2, 5, 3), sample_errors(10, 0.3, 2, 0, 8)[5:])


def test_fer_rises_with_noise(girth6_layout):
    H = expand_layout(girth6_layout)
    runs = sweep(simulate_classical, H, "bsc", [0.02, 0.06, 0.12], 1500, seed=2)
    fers = [r.fer for r in runs]
    assert fers == sorted(fers) and fers[-1] > fers[0]


def test_wilson_interval():
    lo, hi = wilson_interval(0, 100)
    assert lo == pytest.approx(0.0, abs=1e-12) and 0.03 < hi < 0.04
    lo, hi = wilson_interval(50, 100)
    assert lo == pytest.approx(0.4038, abs=1e-4) and hi == pytest.approx(0.5962, abs=1e-4)
    with pytest.raises(ValueError):
        wilson_interval(1, 0)
    a, b = SimResult(10000, 100, 0.01, 0), SimResult(10000, 300, 0.01, 0)
    assert intervals_disjoint(a, b) and not intervals_disjoint(a, SimResult(10000, 110, 0.01, 0))
    row = a.as_row()
    assert row["fer"] == 0.01 and row["ci_lo"] < 0.01 < row["ci_hi"]
