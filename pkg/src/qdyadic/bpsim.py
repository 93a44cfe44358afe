"""Sum-product BP decoding and Monte Carlo frame error rates.

Decoding is syndrome based, flooding schedule, in the log-likelihood domain.
Each trial draws its noise from a Philox generator keyed by (seed, trial), so
a run gives the same answer regardless of batch size or thread count.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import sqrt

import numba as nb
import numpy as np

from .css import CssPair
from .f2la import BitMatrix, BitVector, RowSpace

LLR_CLIP = 30.0
DEFAULT_MAX_ITERS = 100


@dataclass(frozen=True)
class ChannelModel:
    """``bsc`` for classical codes; ``xz`` flips X and Z independently at rate p."""

    kind: str
    p: float

    def __post_init__(self):
        if self.kind not in ("bsc", "xz"):
            raise ValueError(f"unknown channel {self.kind!r}")
        if not 0.0 <= self.p <= 0.5:
            raise ValueError("p must lie in [0, 0.5]")


@dataclass
class SimResult:
    trials: int
    failures: int
    p: float
    seed: int
    settings: dict = field(default_factory=dict)

    @property
    def fer(self) -> float:
        return self.failures / self.trials

    @property
    def wilson(self) -> tuple[float, float]:
        return wilson_interval(self.failures, self.trials)

    def as_row(self) -> dict:
        lo, hi = self.wilson
        return {"p": self.p, "trials": self.trials, "failures": self.failures,
                "fer": self.fer, "ci_lo": lo, "ci_hi": hi}

    def to_json(self) -> dict:
        return {**asdict(self), **self.as_row()}


def wilson_interval(failures: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval (95% by default)."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = failures / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def intervals_disjoint(a: SimResult, b: SimResult) -> bool:
    (alo, ahi), (blo, bhi) = a.wilson, b.wilson
    return ahi < blo or bhi < alo


# ------------------------------------------------------------ decoder

@nb.njit(cache=True)
def _bp_one(c_ptr, e_var, v_ptr, v_edges, syn, prior, max_iters, clip, est):
    m = c_ptr.size - 1
    n = v_ptr.size - 1
    ne = e_var.size
    est[:] = 0
    if not syn.any():
        return True, 0
    v2c = np.empty(ne)
    c2v = np.zeros(ne)
    for e in range(ne):
        v2c[e] = prior
    for it in range(1, max_iters + 1):
        # check update: tanh rule with the syndrome sign
        for c in range(m):
            prod = 1.0
            zeros = 0
            zero_at = -1
            for e in range(c_ptr[c], c_ptr[c + 1]):
                t = np.tanh(0.5 * v2c[e])
                if t == 0.0:
                    zeros += 1
                    zero_at = e
                else:
                    prod *= t
            sign = -1.0 if syn[c] else 1.0
            for e in range(c_ptr[c], c_ptr[c + 1]):
                if zeros > 1 or (zeros == 1 and e != zero_at):
                    val = 0.0
                else:
                    q = prod if zeros == 1 else prod / np.tanh(0.5 * v2c[e])
                    if q > 1 - 1e-15:
                        q = 1 - 1e-15
                    elif q < -1 + 1e-15:
                        q = -1 + 1e-15
                    val = 2.0 * np.arctanh(q)
                val *= sign
                if val > clip:
                    val = clip
                elif val < -clip:
                    val = -clip
                c2v[e] = val
        # variable update and hard decision
        for v in range(n):
            total = prior
            for t in range(v_ptr[v], v_ptr[v + 1]):
                total += c2v[v_edges[t]]
            est[v] = 1 if total < 0 else 0
            for t in range(v_ptr[v], v_ptr[v + 1]):
                e = v_edges[t]
                val = total - c2v[e]
                if val > clip:
                    val = clip
                elif val < -clip:
                    val = -clip
                v2c[e] = val
        ok = True
        for c in range(m):
            par = 0
            for e in range(c_ptr[c], c_ptr[c + 1]):
                par ^= est[e_var[e]]
            if par != syn[c]:
                ok = False
                break
        if ok:
            return True, it
    return False, max_iters


@nb.njit(cache=True, parallel=True)
def _bp_batch(c_ptr, e_var, v_ptr, v_edges, syns, prior, max_iters, clip):
    T = syns.shape[0]
    n = v_ptr.size - 1
    out = np.zeros((T, n), dtype=np.uint8)
    conv = np.zeros(T, dtype=np.bool_)
    for t in nb.prange(T):
        row = np.zeros(n, dtype=np.uint8)
        ok, _ = _bp_one(c_ptr, e_var, v_ptr, v_edges, syns[t], prior, max_iters, clip, row)
        out[t] = row
        conv[t] = ok
    return out, conv


class BpDecoder:
    """Sum-product decoder bound to one parity-check matrix."""

    def __init__(self, H: BitMatrix, p: float, max_iters: int = DEFAULT_MAX_ITERS, clip: float = LLR_CLIP):
        if not 0.0 < p < 0.5:
            raise ValueError("p must lie in (0, 0.5)")
        dense = H.to_dense().astype(bool)
        self.m, self.n = dense.shape
        rows, cols = np.nonzero(dense)  # row-major, so edges are grouped by check
        self.c_ptr = np.searchsorted(rows, np.arange(self.m + 1)).astype(np.int64)
        self.e_var = cols.astype(np.int64)
        order = np.argsort(cols, kind="stable")
        self.v_edges = order.astype(np.int64)
        self.v_ptr = np.searchsorted(cols[order], np.arange(self.n + 1)).astype(np.int64)
        self.prior = float(np.log((1 - p) / p))
        self.max_iters = int(max_iters)
        self.clip = float(clip)

    def decode(self, syndrome) -> tuple[np.ndarray, bool, int]:
        syn = np.asarray(syndrome.to_array() if isinstance(syndrome, BitVector) else syndrome, dtype=np.uint8)
        if syn.size != self.m:
            raise ValueError("syndrome length must equal the number of checks")
        est = np.zeros(self.n, dtype=np.uint8)
        ok, it = _bp_one(self.c_ptr, self.e_var, self.v_ptr, self.v_edges, syn, self.prior,
                         self.max_iters, self.clip, est)
        return est, bool(ok), int(it)

    def decode_batch(self, syndromes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        syns = np.ascontiguousarray(syndromes, dtype=np.uint8)
        return _bp_batch(self.c_ptr, self.e_var, self.v_ptr, self.v_edges, syns, self.prior,
                         self.max_iters, self.clip)


def bp_decode(H: BitMatrix, syndrome: BitVector, p: float,
              max_iters: int = DEFAULT_MAX_ITERS) -> tuple[BitVector, bool]:
    est, ok, _ = BpDecoder(H, p, max_iters).decode(syndrome)
    return BitVector.from_bits(est), ok


# ---------------------------------------------------------- sampling

def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed, trial], dtype=np.uint64)))


def sample_errors(n: int, p: float, seed: int, start: int, count: int, copies: int = 1) -> np.ndarray:
    """Bernoulli(p) errors for trials start..start+count-1, shape (count, copies * n)."""
    out = np.empty((count, copies * n), dtype=np.uint8)
    for t in range(count):
        out[t] = trial_rng(seed, start + t).random(copies * n) < p
    return out


def _syndromes(H: np.ndarray, E: np.ndarray) -> np.ndarray:
    return ((E.astype(np.int64) @ H.T.astype(np.int64)) & 1).astype(np.uint8)


def _settings(max_iters, batch) -> dict:
    return {"decoder": "sum-product", "schedule": "flooding", "max_iters": max_iters,
            "llr_clip": LLR_CLIP, "batch": batch}


def simulate_classical(H: BitMatrix, channel: ChannelModel, trials: int, seed: int,
                       max_iters: int = DEFAULT_MAX_ITERS, batch: int = 2048) -> SimResult:
    """Block error rate of BP on H over a binary symmetric channel."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if channel.kind != "bsc":
        raise ValueError("classical simulation needs a bsc channel")
    res = SimResult(trials, 0, channel.p, seed, _settings(max_iters, batch))
    if channel.p == 0:
        return res
    dense = H.to_dense()
    dec = BpDecoder(H, channel.p, max_iters)
    for start in range(0, trials, batch):
        cnt = min(batch, trials - start)
        E = sample_errors(H.cols, channel.p, seed, start, cnt)
        est, _ = dec.decode_batch(_syndromes(dense, E))
        res.failures += int((est != E).any(axis=1).sum())
    return res


def simulate_css(pair: CssPair, channel: ChannelModel, trials: int, seed: int,
                 max_iters: int = DEFAULT_MAX_ITERS, batch: int = 2048) -> SimResult:
    """Logical error rate with X and Z errors decoded independently.

    X errors are decoded on Hz and fail when the residual leaves rs(Hx);
    Z errors likewise on Hx against rs(Hz).
    """
    if not pair.commute_verified:
        raise ValueError("pair is not verified to commute")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if channel.kind != "xz":
        raise ValueError("CSS simulation needs an xz channel")
    res = SimResult(trials, 0, channel.p, seed, _settings(max_iters, batch))
    if channel.p == 0:
        return res
    n = pair.n
    hx, hz = pair.hx.to_dense(), pair.hz.to_dense()
    dec_x = BpDecoder(pair.hz, channel.p, max_iters)  # corrects X errors
    dec_z = BpDecoder(pair.hx, channel.p, max_iters)  # corrects Z errors
    stab_x, stab_z = RowSpace(pair.hx), RowSpace(pair.hz)
    for start in range(0, trials, batch):
        cnt = min(batch, trials - start)
        E = sample_errors(n, channel.p, seed, start, cnt, copies=2)
        ex, ez = E[:, :n], E[:, n:]
        est_x, _ = dec_x.decode_batch(_syndromes(hz, ex))
        est_z, _ = dec_z.decode_batch(_syndromes(hx, ez))
        bad_x = ~stab_x.contains_batch(ex ^ est_x)
        bad_z = ~stab_z.contains_batch(ez ^ est_z)
        res.failures += int((bad_x | bad_z).sum())
    return res


def sweep(simulate, code, kind: str, ps, trials: int, seed: int, **kw) -> list[SimResult]:
    return [simulate(code, ChannelModel(kind, float(p)), trials, seed, **kw) for p in ps]
