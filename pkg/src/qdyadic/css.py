"""CSS pairs built from dyadic and quasi-dyadic matrices.

Every public constructor checks ``Hx @ Hz.T == 0`` on the expanded matrices
before handing back a :class:`CssPair`; a failing instance raises
:class:`CommutationError` carrying a diagnostic.
"""

from __future__ import annotations

import json
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cyclecount import count4_quasi, count6_quasi, count8_quasi_scaled, girth
from .dyadic import DyadicMatrix, expand, mul
from .f2la import BitMatrix, kernel_basis, rank
from .lift import QuasiDyadicLayout, expand_layout
from .oracle import BudgetExceeded, _min_weight, css_params, two_block_min_logical


class CommutationError(ValueError):
    def __init__(self, message: str, diagnostic: dict | None = None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


@dataclass
class CssPair:
    hx: BitMatrix
    hz: BitMatrix
    hx_layout: QuasiDyadicLayout | None = None
    hz_layout: QuasiDyadicLayout | None = None
    kind: str = ""
    meta: dict = field(default_factory=dict)
    commute_verified: bool = False

    @property
    def n(self) -> int:
        return self.hx.cols

    @property
    def k(self) -> int:
        return self.n - rank(self.hx) - rank(self.hz)

    def params(self, compute_distance: bool = True):
        return css_params(self.hx, self.hz, compute_distance)

    def to_json(self) -> dict:
        def enc(L, H):
            if L is not None:
                return {"layout": L.to_json()}
            return {"dense": H.to_dense().tolist()}

        return {"kind": self.kind, "n": self.n, "hx": enc(self.hx_layout, self.hx),
                "hz": enc(self.hz_layout, self.hz), "meta": self.meta}

    @classmethod
    def from_json(cls, obj: dict) -> CssPair:
        def dec(d):
            if "layout" in d:
                L = QuasiDyadicLayout.from_json(d["layout"])
                return L, expand_layout(L)
            return None, BitMatrix.from_dense(d["dense"])

        lx, hx = dec(obj["hx"])
        lz, hz = dec(obj["hz"])
        return verified_pair(hx, hz, lx, lz, obj.get("kind", ""), obj.get("meta", {}))


def save_pair(pair: CssPair, path: str | Path) -> None:
    Path(path).write_text(json.dumps(pair.to_json()))


def load_pair(path: str | Path) -> CssPair:
    return CssPair.from_json(json.loads(Path(path).read_text()))


def commutes(hx: BitMatrix, hz: BitMatrix) -> bool:
    return hx.cols == hz.cols and (hx @ hz.T).is_zero()


def verified_pair(hx, hz, hx_layout=None, hz_layout=None, kind="", meta=None) -> CssPair:
    if hx.cols != hz.cols:
        raise ValueError("Hx and Hz lengths differ")
    if not commutes(hx, hz):
        raise CommutationError(f"{kind or 'pair'}: Hx Hz^T != 0")
    return CssPair(hx, hz, hx_layout, hz_layout, kind, dict(meta or {}), True)


def pair_from_layouts(lx: QuasiDyadicLayout, lz: QuasiDyadicLayout, kind="", meta=None) -> CssPair:
    return verified_pair(expand_layout(lx), expand_layout(lz), lx, lz, kind, meta)


# ------------------------------------------------------- dyadic routes

def symmetric_css(D: DyadicMatrix) -> CssPair:
    """Hx = Hz = D for an even-weight signature (D^2 = 0 and D symmetric)."""
    if D.weight % 2:
        raise ValueError("signature weight must be even")
    L = QuasiDyadicLayout(D.ell, [[D.support]])
    return pair_from_layouts(L, L, "symmetric", {"support": D.support})


def cross_pair(Dx: DyadicMatrix, Dz: DyadicMatrix) -> CssPair:
    """Hx = Dx, Hz = Dz; valid iff the signature of Dz lies in ker(Dx)."""
    if mul(Dx, Dz).weight:
        raise CommutationError("Dx Dz != 0: signature of Dz is not in ker(Dx)")
    lx = QuasiDyadicLayout(Dx.ell, [[Dx.support]])
    lz = QuasiDyadicLayout(Dz.ell, [[Dz.support]])
    return pair_from_layouts(lx, lz, "cross", {"x_support": Dx.support, "z_support": Dz.support})


def bicycle(D1: DyadicMatrix, D2: DyadicMatrix) -> CssPair:
    """H1 = [D1 | D2], H2 = [D2 | D1]; dyadics commute so H1 H2^T = D1 D2 + D2 D1 = 0."""
    if D1.ell != D2.ell:
        raise ValueError("ell mismatch")
    lx = QuasiDyadicLayout(D1.ell, [[D1.support, D2.support]])
    lz = QuasiDyadicLayout(D1.ell, [[D2.support, D1.support]])
    return pair_from_layouts(lx, lz, "bicycle", {"d1": D1.support, "d2": D2.support})


def bicycle_dimension_formula(D1: DyadicMatrix, D2: DyadicMatrix) -> int:
    """2 dim(ker D1 ∩ ker D2), the predicted K for rank-N/2 even-weight inputs."""
    stacked = BitMatrix.from_dense(np.vstack([expand(D1).to_dense(), expand(D2).to_dense()]))
    return 2 * (D1.N - rank(stacked))


Grid = Sequence[Sequence[DyadicMatrix | None]]


def _grid_layout(ell: int, grid) -> QuasiDyadicLayout:
    return QuasiDyadicLayout(ell, [[frozenset() if d is None else d.support for d in row] for row in grid])


def hypergraph_product(A: Grid, B: Grid, ell: int) -> CssPair:
    """H1 = [A⊗I | I⊗B], H2 = [I⊗B^T | A^T⊗I] with dyadic entries (None = 0)."""
    mA, nA = len(A), len(A[0])
    mB, nB = len(B), len(B[0])

    def kron_left(M, rows, cols, ident):  # M ⊗ I_ident
        out = [[None] * (cols * ident) for _ in range(rows * ident)]
        for a in range(rows):
            for c in range(cols):
                for b in range(ident):
                    out[a * ident + b][c * ident + b] = M[a][c]
        return out

    def kron_right(M, rows, cols, ident):  # I_ident ⊗ M
        out = [[None] * (cols * ident) for _ in range(rows * ident)]
        for a in range(ident):
            for b in range(rows):
                for c in range(cols):
                    out[a * rows + b][a * cols + c] = M[b][c]
        return out

    AT = [[A[r][c] for r in range(mA)] for c in range(nA)]
    BT = [[B[r][c] for r in range(mB)] for c in range(nB)]
    h1l = kron_left(A, mA, nA, mB)
    h1r = kron_right(B, mB, nB, mA)
    h2l = kron_right(BT, nB, mB, nA)
    h2r = kron_left(AT, nA, mA, nB)
    h1 = [l + r for l, r in zip(h1l, h1r)]
    h2 = [l + r for l, r in zip(h2l, h2r)]
    return pair_from_layouts(_grid_layout(ell, h1), _grid_layout(ell, h2), "hgp")


# ------------------------------------------- permutation-pair layout

def perm_power(perm: Sequence[int], k: int) -> list[int]:
    out = list(range(len(perm)))
    for _ in range(k):
        out = [perm[t] for t in out]
    return out


def perm_order(perm: Sequence[int]) -> int:
    ident = list(range(len(perm)))
    cur, k = list(perm), 1
    while cur != ident:
        cur = [perm[t] for t in cur]
        k += 1
    return k


def cyclic_perm(omega: int) -> list[int]:
    return [(t + 1) % omega for t in range(omega)]


def _check_perm(perm, omega: int) -> list[int]:
    perm = [int(t) for t in perm]
    if sorted(perm) != list(range(omega)):
        raise ValueError(f"{perm} is not a permutation of range({omega})")
    if perm_order(perm) != omega:
        raise ValueError(f"permutation {perm} has order {perm_order(perm)}, need {omega}")
    return perm


def main_commutation_report(omega: int, x: Sequence[int], y: Sequence[int],
                            sigma: Sequence[int], tau: Sequence[int]) -> dict:
    """Term matching for sum_k P_{x_s(k)} P_{y_t(k)} = sum_k P_{y_s(k)} P_{x_t(k)}.

    ``symbolic`` compares (x-label, y-label) multisets, which is what makes
    the identity hold for every choice of shifts; ``numeric`` compares the
    parity of each resulting shift for the given values.
    """
    first_symbolic = first_numeric = None
    for i in range(omega):
        si = perm_power(sigma, i)
        for j in range(omega):
            tj = perm_power(tau, j)
            lhs = Counter((si[k], tj[k]) for k in range(omega))
            rhs = Counter((tj[k], si[k]) for k in range(omega))
            if first_symbolic is None and lhs != rhs:
                extra = sorted((lhs - rhs).elements())
                first_symbolic = {"i": i, "j": j, "unmatched_x_y_labels": extra[:1]}
            lv = Counter(x[si[k]] ^ y[tj[k]] for k in range(omega))
            rv = Counter(y[si[k]] ^ x[tj[k]] for k in range(omega))
            odd = {s for s in set(lv) | set(rv) if (lv[s] + rv[s]) % 2}
            if first_numeric is None and odd:
                first_numeric = {"i": i, "j": j, "unmatched_shift": min(odd)}
    return {"symbolic_ok": first_symbolic is None, "numeric_ok": first_numeric is None,
            "first_symbolic_mismatch": first_symbolic, "first_numeric_mismatch": first_numeric}


def main_layouts(omega: int, ell: int, x, y, sigma, tau, rows: int | None = None):
    """H_X = [x_{s^i(j)} | y_{s^i(j)}], H_Z = [y_{t^i(j)} | x_{t^i(j)}] as layouts."""
    rows = omega if rows is None else rows
    hx, hz = [], []
    for i in range(rows):
        si, ti = perm_power(sigma, i), perm_power(tau, i)
        hx.append([[x[si[j]]] for j in range(omega)] + [[y[si[j]]] for j in range(omega)])
        hz.append([[y[ti[j]]] for j in range(omega)] + [[x[ti[j]]] for j in range(omega)])
    return QuasiDyadicLayout(ell, hx), QuasiDyadicLayout(ell, hz)


def construction_main(omega: int, ell: int, x: Sequence[int], y: Sequence[int],
                      sigma: Sequence[int] | None = None, tau: Sequence[int] | None = None,
                      rows: int | None = None) -> CssPair:
    """Cyclic permutation-pair layout built literally; raises CommutationError when Hx Hz^T != 0."""
    if len(x) != omega or len(y) != omega:
        raise ValueError("need omega x-shifts and omega y-shifts")
    sigma = _check_perm(cyclic_perm(omega) if sigma is None else sigma, omega)
    tau = _check_perm(cyclic_perm(omega) if tau is None else tau, omega)
    lx, lz = main_layouts(omega, ell, list(x), list(y), sigma, tau, rows)
    hx, hz = expand_layout(lx), expand_layout(lz)
    meta = {"omega": omega, "x": list(map(int, x)), "y": list(map(int, y)),
            "sigma": sigma, "tau": tau, "rows": rows or omega}
    if not commutes(hx, hz):
        report = main_commutation_report(omega, list(x), list(y), sigma, tau)
        raise CommutationError("permutation-pair instance does not commute", report)
    return CssPair(hx, hz, lx, lz, "main", meta, True)


def construction_main_transposed(omega: int, ell: int, x: Sequence[int], y: Sequence[int],
                                 rows: int | None = None) -> CssPair:
    """Circulant variant H_X = [C_x | C_y], H_Z = [C_y^T | C_x^T] with C_x[i, j] = x_{(j-i) mod omega}.

    Block circulants over the commutative dyadic ring commute, so
    H_X H_Z^T = C_x C_y + C_y C_x = 0 for every choice of shifts.
    """
    rows = omega if rows is None else rows
    if len(x) != omega or len(y) != omega:
        raise ValueError("need omega x-shifts and omega y-shifts")
    hx = [[[x[(j - i) % omega]] for j in range(omega)] + [[y[(j - i) % omega]] for j in range(omega)]
          for i in range(rows)]
    hz = [[[y[(i - j) % omega]] for j in range(omega)] + [[x[(i - j) % omega]] for j in range(omega)]
          for i in range(rows)]
    meta = {"omega": omega, "x": list(map(int, x)), "y": list(map(int, y)), "rows": rows}
    return pair_from_layouts(QuasiDyadicLayout(ell, hx), QuasiDyadicLayout(ell, hz), "main-transposed", meta)


# ---------------------------------------- alternating dual-containing

def bbs_layout(ell: int, v: int, base: int, x: Sequence[int | None], rows: int = 4) -> QuasiDyadicLayout:
    """4 x 2v block matrix alternating P and P_{x_i}; ``None`` in x leaves a cell unset (zero)."""
    if len(x) != v:
        raise ValueError("need v shifts")
    if not 1 <= rows <= 4:
        raise ValueError("rows must be 1..4")

    def X(idx1):  # 1-based label
        s = x[idx1 - 1]
        return frozenset() if s is None else [s]

    P = [base]
    r1, r2, r3, r4 = [], [], [], []
    for t in range(v):
        r1 += [P, X(t + 1)]
        r2 += [X(((t - 1) % v) + 1), P]
        r3 += [P, X(v - t)]
        r4 += [X(((-t) % v) + 1), P]
    full = [r1, r2, r3, r4]
    return QuasiDyadicLayout(ell, full[:rows])


def construction_bbs(ell: int, v: int, base: int, x: Sequence[int], rows: int = 4) -> CssPair:
    """Self-dual pair Hx = Hz = H_P."""
    L = bbs_layout(ell, v, base, list(x), rows)
    return pair_from_layouts(L, L, "bbs", {"v": v, "base": int(base), "x": list(map(int, x)), "rows": rows})


# ------------------------------------------------------------ searches

@dataclass
class SearchResult:
    found: bool
    pair: CssPair | None
    params: tuple | None
    tried: int
    notes: dict = field(default_factory=dict)


def bbs_cycle_profile(ell: int, v: int, x: Sequence[int], rows: int = 4) -> tuple[int, int]:
    L = bbs_layout(ell, v, 0, list(x), rows)
    return count4_quasi(L), count6_quasi(L)


def optimize_bbs(ell: int, v: int, rows: int = 4, strategy: str = "min", seed: int = 0,
                 max_exhaustive: int = 1 << 16, samples: int = 4096) -> tuple[list[int], tuple[int, int]]:
    """Pick x_1..x_v for the alternating layout by 4-cycle (then 6-cycle) count.

    A common XOR on all shifts leaves the cycle structure unchanged, so P is
    fixed to P_0.  Small spaces are searched exhaustively; otherwise ``samples``
    random draws are ranked.  ``strategy`` is min, max, avg or random.
    """
    rng = np.random.default_rng(seed)
    N = 1 << ell
    if strategy == "random":
        x = rng.integers(0, N, size=v).tolist()
        return x, bbs_cycle_profile(ell, v, x, rows)
    if N ** v <= max_exhaustive:
        grid = np.stack(np.meshgrid(*[np.arange(N)] * v, indexing="ij"), -1).reshape(-1, v)
    else:
        grid = rng.integers(0, N, size=(samples, v))
    scores = [bbs_cycle_profile(ell, v, row.tolist(), rows) for row in grid]
    keys = np.array([s[0] * (1 << 40) + s[1] for s in scores], dtype=np.int64)
    if strategy == "min":
        pick = np.flatnonzero(keys == keys.min())
    elif strategy == "max":
        pick = np.flatnonzero(keys == keys.max())
    elif strategy == "avg":
        target = int(np.floor(np.median(keys)))
        gap = np.abs(keys - target)
        pick = np.flatnonzero(gap == gap.min())
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    chosen = int(rng.choice(pick))
    return grid[chosen].tolist(), scores[chosen]


def optimize_main(omega: int, ell: int, rows: int, seed: int = 0, samples: int = 2000,
                  strategy: str = "min") -> tuple[CssPair, dict]:
    """Random search over (x, y) for the circulant permutation-pair variant.

    Ranks by (-girth, N_4, N_6, 4 N_8) of H_X and H_Z combined; ``random``
    returns the first draw.
    """
    rng = np.random.default_rng(seed)
    N = 1 << ell
    best = None
    for t in range(samples):
        x = rng.integers(0, N, size=omega).tolist()
        y = rng.integers(0, N, size=omega).tolist()
        pair = construction_main_transposed(omega, ell, x, y, rows)
        key = _cycle_key(pair)
        if strategy == "random":
            return pair, {"key": key, "tried": 1}
        if best is None or key < best[0]:
            best = (key, pair)
    return best[1], {"key": best[0], "tried": samples}


def search_main_commuting(omega: int, ell: int, rows: int | None = None, seed: int = 0,
                          samples: int = 20000, keep: int = 200) -> tuple[CssPair, dict]:
    """Girth-optimized literal permutation-pair layout with cyclic sigma = tau.

    Random (x, y) are screened by the numeric term test on the used rows; the
    first ``keep`` commuting draws are ranked by (-girth, N_4, N_6, 4 N_8).
    """
    rows = omega if rows is None else rows
    rng = np.random.default_rng(seed)
    N = 1 << ell
    cyc = cyclic_perm(omega)
    best, seen = None, 0
    for t in range(samples):
        x = rng.integers(0, N, size=omega).tolist()
        y = rng.integers(0, N, size=omega).tolist()
        if not _rows_term_ok(omega, x, y, rows):
            continue
        pair = construction_main(omega, ell, x, y, cyc, cyc, rows)
        key = _cycle_key(pair)
        seen += 1
        if best is None or key < best[0]:
            best = (key, pair)
        if seen >= keep:
            break
    if best is None:
        raise CommutationError(f"no commuting instance in {samples} draws")
    return best[1], {"key": best[0], "commuting_seen": seen, "draws": t + 1}


def _rows_term_ok(omega: int, x, y, rows: int) -> bool:
    for i in range(rows):
        for j in range(rows):
            if i == j:
                continue
            par: dict[int, int] = {}
            for k in range(omega):
                a = x[(k + i) % omega] ^ y[(k + j) % omega]
                b = y[(k + i) % omega] ^ x[(k + j) % omega]
                par[a] = par.get(a, 0) ^ 1
                par[b] = par.get(b, 0) ^ 1
            if any(par.values()):
                return False
    return True


def _cycle_key(pair: CssPair) -> tuple:
    g = min(girth(pair.hx_layout), girth(pair.hz_layout))
    c4 = count4_quasi(pair.hx_layout) + count4_quasi(pair.hz_layout)
    c6 = count6_quasi(pair.hx_layout) + count6_quasi(pair.hz_layout)
    c8 = count8_quasi_scaled(pair.hx_layout) + count8_quasi_scaled(pair.hz_layout)
    return (-g, c4, c6, c8)


def search_quasi_dyadic_css(n_c: int, n_v: int, ell: int, target: tuple[int, int, int],
                            seed: int = 0, budget: int = 2000) -> SearchResult:
    """Random H_X over the dyadic ring; H_Z rows drawn from the commutant module.

    The block rows z of H_Z must satisfy sum_k X[i, k] z_k = 0 for every i,
    a GF(2)-linear condition on the signatures of z.
    """
    rng = np.random.default_rng(seed)
    N = 1 << ell
    n_t, k_t, d_t = target
    if n_v * N != n_t:
        raise ValueError("n_v * 2^ell must equal the target length")
    for trial in range(1, budget + 1):
        X = rng.integers(0, 2, size=(n_c, n_v, N))
        # linear map z -> (sum_k X[i,k] z_k)_i on the n_v*N signature bits
        cols = []
        for k in range(n_v):
            for b in range(N):
                img = np.zeros(n_c * N, dtype=np.uint8)
                for i in range(n_c):
                    # sigma(D_u D_{e_b}) = u permuted by XOR with b
                    img[i * N:(i + 1) * N] = X[i, k][np.arange(N) ^ b]
                cols.append(img)
        M = BitMatrix.from_dense(np.array(cols).T)
        basis = kernel_basis(M)
        if not basis:
            continue
        coeffs = rng.integers(0, 2, size=(n_c, len(basis)))
        basis_arr = np.array([b.to_array() for b in basis])
        Z = (coeffs @ basis_arr) % 2
        lx = QuasiDyadicLayout(ell, [[np.flatnonzero(X[i, k]).tolist() for k in range(n_v)]
                                     for i in range(n_c)])
        lz = QuasiDyadicLayout(ell, [[np.flatnonzero(Z[i, k * N:(k + 1) * N]).tolist()
                                      for k in range(n_v)] for i in range(n_c)])
        hx, hz = expand_layout(lx), expand_layout(lz)
        if not commutes(hx, hz):
            raise AssertionError("commutant construction failed to commute")
        if hx.cols - rank(hx) - rank(hz) != k_t:
            continue
        p = css_params(hx, hz)
        if p.d is not None and p.d >= d_t:
            pair = CssPair(hx, hz, lx, lz, "quasi-dyadic-search", {"seed": seed, "trial": trial}, True)
            return SearchResult(True, pair, p.as_tuple(), trial)
    return SearchResult(False, None, None, budget)


def _orbit_rank(gens: Sequence[np.ndarray], N: int) -> int:
    rows = [g.reshape(-1, N)[:, np.arange(N) ^ u].reshape(-1) for g in gens for u in range(N)]
    return rank(BitMatrix.from_dense(np.array(rows)))


def _random_affine_involution(m: int, rng: np.random.Generator, pts: np.ndarray) -> np.ndarray | None:
    A = rng.integers(0, 2, size=(m, m))
    if not ((A @ A) % 2 == np.eye(m, dtype=np.int64)).all():
        return None
    c = rng.integers(0, 2, size=m)
    if not ((A @ c) % 2 == c).all():
        return None
    img = ((pts @ A.T) + c) % 2 @ (1 << np.arange(m - 1, -1, -1))
    return img.astype(np.int64)


def reed_muller_quasi_dyadic(m: int, ell: int, n_c: int, seed: int = 0,
                             budget: int = 200000) -> SearchResult:
    """Self-orthogonal first-order Reed-Muller code written as an n_c x 2^(m-ell) layout over D_ell.

    The dyadic group must act on the 2^m points by affine maps so that
    RM(1, m) is invariant; translations alone need m generators, so commuting
    fixed-point-free affine involutions are sampled until the invariant code is
    generated by ``n_c`` block rows.  Hx = Hz gives [[2^m, 2^m - 2m - 2, 4]]
    for m >= 4.
    """
    rng = np.random.default_rng(seed)
    P, N = 1 << m, 1 << ell
    pts = (np.arange(P)[:, None] >> np.arange(m - 1, -1, -1)) & 1
    RM = np.vstack([np.ones(P, dtype=np.int64)] + [pts[:, i] for i in range(m)])
    for trial in range(1, budget + 1):
        gens = []
        while len(gens) < ell:
            g = _random_affine_involution(m, rng, pts)
            if g is not None:
                gens.append(g)
        if any((a[b] != b[a]).any() for a in gens for b in gens):
            continue
        # group element for label u is the product of gens[t] over set bits t (low bit = last gen)
        elems = []
        for u in range(N):
            e = np.arange(P)
            for t in range(ell):
                if (u >> t) & 1:
                    e = gens[ell - 1 - t][e]
            elems.append(e)
        if any((e == np.arange(P)).any() for e in elems[1:]):
            continue
        order, seen = [], np.zeros(P, dtype=bool)
        for p in range(P):
            if not seen[p]:
                orbit = [int(e[p]) for e in elems]
                seen[orbit] = True
                order += orbit
        V = RM[:, order]
        words = [(np.array(c) @ V) % 2 for c in np.ndindex(*(2,) * (m + 1))][1:]
        # generators: greedy extension of the orbit span by codewords
        chosen: list[np.ndarray] = []
        cur = 0
        for w in words:
            r = _orbit_rank(chosen + [w], N)
            if r > cur:
                chosen.append(w)
                cur = r
            if cur == m + 1:
                break
        if len(chosen) > n_c:
            # greedy may overshoot; try all n_c-subsets of codewords
            from itertools import combinations

            chosen = next((list(c) for c in combinations(words, n_c) if _orbit_rank(c, N) == m + 1), None)
            if chosen is None:
                continue
        while len(chosen) < n_c:
            chosen.append(np.zeros(P, dtype=np.int64))
        L = QuasiDyadicLayout(ell, [[np.flatnonzero(g.reshape(-1, N)[k]).tolist() for k in range(P // N)]
                                    for g in chosen])
        pair = pair_from_layouts(L, L, "reed-muller-qd", {"m": m, "seed": seed, "trial": trial})
        return SearchResult(True, pair, None, trial)
    return SearchResult(False, None, None, budget)


def _code_distance_of_rowspace(D: DyadicMatrix) -> int:
    rows = expand(D)
    from .f2la import _echelon

    basis, _ = _echelon(rows.data, rows.cols)
    return _min_weight(basis, (1 << basis.shape[0]) - 1)


def search_bicycle(ell: int, target_k: int, target_d: int, seed: int = 0, budget: int = 500,
                   weight_choices: Sequence[int] = (6, 8, 10, 12)) -> SearchResult:
    """Bicycle pair [[2N, target_k, >= target_d]] with a certified distance.

    Components are drawn with even support and nonzero XOR-sum (rank N/2, so
    ker D = rs D) and d(ker D) >= target_d.  That is only a heuristic filter:
    min(d(C1), d(C2)) is not a lower bound on the CSS distance in general.
    Each candidate is certified with an exhaustive two-block logical scan.
    """
    rng = np.random.default_rng(seed)
    N = 1 << ell
    pool: list[tuple[DyadicMatrix, int]] = []
    tried = 0
    while tried < budget:
        tried += 1
        w = int(rng.choice(weight_choices))
        S = rng.choice(N, size=w, replace=False)
        if np.bitwise_xor.reduce(S) == 0:
            continue
        D = DyadicMatrix.from_support(ell, S.tolist())
        try:
            d = _code_distance_of_rowspace(D)
        except BudgetExceeded:
            continue
        if d is None or d < target_d:
            continue
        for D2, d2 in pool:
            if bicycle_dimension_formula(D, D2) != target_k:
                continue
            pair = bicycle(D, D2)
            if pair.k != target_k:
                raise AssertionError("bicycle dimension formula disagrees with rank count")
            cert = certify_two_block_distance(pair, target_d - 1)
            if cert["certified_above"] is None:
                continue
            exact = certify_two_block_distance(pair, target_d)
            d_exact = min(v for v in (exact["d_x"], exact["d_z"], target_d + 1) if v is not None)
            notes = {"component_distances": [d, d2], "distance_exact": d_exact == target_d}
            dist = d_exact if d_exact == target_d else target_d
            return SearchResult(True, pair, (2 * N, target_k, dist), tried, notes)
        pool.append((D, d))
    return SearchResult(False, None, None, tried, {"pool_size": len(pool)})


def certify_two_block_distance(pair: CssPair, max_weight: int) -> dict:
    """Exact low-weight logical scan for pairs whose columns split into two halves of <= 64.

    Returns {"d_x", "d_z", "certified_above"}: each entry is the minimum logical
    weight if it is <= max_weight, otherwise None, meaning the distance on that
    side is provably > max_weight.
    """
    n = pair.n
    if n % 2:
        raise ValueError("length must be even")
    half = n // 2
    hx, hz = pair.hx.to_dense(), pair.hz.to_dense()
    d_z = two_block_min_logical(hx[:, :half], hx[:, half:], pair.hz, max_weight)
    d_x = two_block_min_logical(hz[:, :half], hz[:, half:], pair.hx, max_weight)
    return {"d_x": d_x, "d_z": d_z, "certified_above": max_weight if d_x is None and d_z is None else None}
