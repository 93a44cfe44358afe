"""Brute-force ground truth for small instances.

Everything here is deliberately naive: explicit DFS over simple cycles, BFS
girth, exhaustive subset search and exhaustive codeword enumeration.  Budgets
are hard limits; exceeding one raises :class:`BudgetExceeded` instead of
returning a partial answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numba as nb
import numpy as np

from .f2la import BitMatrix, RowSpace, _echelon, kernel_basis, rank
from .lift import TannerGraph

INF = float("inf")


class BudgetExceeded(RuntimeError):
    """The requested exhaustive search would exceed its step budget."""


# ---------------------------------------------------------------- cycles

@nb.njit(cache=True)
def _count_cycles(indptr, indices, k_max, budget):
    nv = indptr.size - 1
    counts = np.zeros(k_max + 1, dtype=np.int64)
    path = np.empty(k_max + 1, dtype=np.int64)
    ptr = np.empty(k_max + 1, dtype=np.int64)
    on_path = np.zeros(nv, dtype=np.bool_)
    steps = 0
    for s in range(nv):
        path[0] = s
        ptr[0] = indptr[s]
        on_path[s] = True
        depth = 0
        while depth >= 0:
            v = path[depth]
            if ptr[depth] < indptr[v + 1]:
                w = indices[ptr[depth]]
                ptr[depth] += 1
                steps += 1
                if steps > budget:
                    return counts, -1
                if w == s:
                    # close the cycle; count one orientation only
                    if depth >= 2 and path[1] < path[depth]:
                        counts[depth + 1] += 1
                    continue
                if w < s or on_path[w]:
                    continue
                if depth + 1 <= k_max - 1:
                    depth += 1
                    path[depth] = w
                    ptr[depth] = indptr[w]
                    on_path[w] = True
            else:
                on_path[v] = False
                depth -= 1
    return counts, steps


@dataclass(frozen=True)
class CycleInventory:
    """Exact number of k-cycles for each even k up to ``k_max``."""

    counts: dict[int, int]
    k_max: int

    def __getitem__(self, k: int) -> int:
        if k > self.k_max:
            raise KeyError(f"k={k} beyond enumerated range {self.k_max}")
        return self.counts.get(k, 0)

    def shortest(self) -> float:
        nz = [k for k, c in self.counts.items() if c]
        return min(nz) if nz else INF


def enumerate_cycles(G: TannerGraph, k_max: int = 8, budget: int = 2_000_000_000) -> CycleInventory:
    """Count simple cycles of every length <= k_max, each exactly once."""
    if k_max > 10:
        raise ValueError("k_max must be <= 10")
    indptr, indices = G.csr()
    counts, steps = _count_cycles(indptr, indices, int(k_max), int(budget))
    if steps < 0:
        raise BudgetExceeded(f"cycle enumeration exceeded {budget} DFS steps")
    return CycleInventory({k: int(counts[k]) for k in range(4, k_max + 1, 2)}, k_max)


@nb.njit(cache=True)
def _girth(indptr, indices):
    nv = indptr.size - 1
    best = np.int64(1 << 60)
    dist = np.full(nv, -1, dtype=np.int64)
    parent = np.full(nv, -1, dtype=np.int64)
    queue = np.empty(nv, dtype=np.int64)
    for root in range(nv):
        dist[:] = -1
        parent[:] = -1
        dist[root] = 0
        head, tail = 0, 1
        queue[0] = root
        while head < tail:
            u = queue[head]
            head += 1
            if 2 * dist[u] + 1 >= best:
                break
            for e in range(indptr[u], indptr[u + 1]):
                w = indices[e]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue[tail] = w
                    tail += 1
                elif w != parent[u]:
                    c = dist[u] + dist[w] + 1
                    if c < best:
                        best = c
    return best


def girth_bfs(G: TannerGraph) -> float:
    """Shortest cycle length, or ``inf`` for a forest."""
    indptr, indices = G.csr()
    g = int(_girth(indptr, indices))
    return INF if g >= 1 << 60 else g


def four_cycles_by_codegree(H: np.ndarray) -> int:
    """Independent 4-cycle count: sum over check pairs of C(common neighbours, 2)."""
    H = np.asarray(H, dtype=np.int64)
    co = H @ H.T
    iu = np.triu_indices(co.shape[0], 1)
    c = co[iu]
    return int((c * (c - 1) // 2).sum())


# ------------------------------------------------------- absorbing sets

@nb.njit(cache=True)
def _absorbing_search(v_ptr, v_idx, c_ptr, c_idx, n, m, a_max, connected_only):
    cap = 1024
    out_sets = np.full((cap, a_max), -1, dtype=np.int64)
    out_b = np.empty(cap, dtype=np.int64)
    found = 0
    deg = np.zeros(m, dtype=np.int64)
    in_a = np.zeros(n, dtype=np.bool_)
    seen_c = np.zeros(m, dtype=np.bool_)
    seen_v = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n + m, dtype=np.int64)
    comb_idx = np.empty(a_max, dtype=np.int64)
    for a in range(1, a_max + 1):
        if a > n:
            break
        for t in range(a):
            comb_idx[t] = t
        while True:
            for t in range(a):
                v = comb_idx[t]
                in_a[v] = True
                for e in range(v_ptr[v], v_ptr[v + 1]):
                    deg[v_idx[e]] += 1
            ok = True
            for t in range(a):
                v = comb_idx[t]
                even = 0
                odd = 0
                for e in range(v_ptr[v], v_ptr[v + 1]):
                    if deg[v_idx[e]] % 2 == 0:
                        even += 1
                    else:
                        odd += 1
                if even <= odd:
                    ok = False
                    break
            b = 0
            if ok:
                for t in range(a):
                    v = comb_idx[t]
                    for e in range(v_ptr[v], v_ptr[v + 1]):
                        c = v_idx[e]
                        if deg[c] % 2 == 1 and not seen_c[c]:
                            seen_c[c] = True
                            b += 1
                for t in range(a):
                    v = comb_idx[t]
                    for e in range(v_ptr[v], v_ptr[v + 1]):
                        seen_c[v_idx[e]] = False
            if ok and connected_only:
                # BFS in the subgraph induced on A and its check neighbourhood
                top = 0
                stack[0] = comb_idx[0]
                top = 1
                seen_v[comb_idx[0]] = True
                reached = 1
                while top > 0:
                    top -= 1
                    x = stack[top]
                    if x < n:
                        for e in range(v_ptr[x], v_ptr[x + 1]):
                            c = v_idx[e]
                            if not seen_c[c]:
                                seen_c[c] = True
                                stack[top] = n + c
                                top += 1
                    else:
                        c = x - n
                        for e in range(c_ptr[c], c_ptr[c + 1]):
                            w = c_idx[e]
                            if in_a[w] and not seen_v[w]:
                                seen_v[w] = True
                                reached += 1
                                stack[top] = w
                                top += 1
                if reached < a:
                    ok = False
                for t in range(a):
                    v = comb_idx[t]
                    seen_v[v] = False
                    for e in range(v_ptr[v], v_ptr[v + 1]):
                        seen_c[v_idx[e]] = False
            if ok:
                if found == cap:
                    cap *= 2
                    grown = np.full((cap, a_max), -1, dtype=np.int64)
                    grown[:found] = out_sets[:found]
                    out_sets = grown
                    grown_b = np.empty(cap, dtype=np.int64)
                    grown_b[:found] = out_b[:found]
                    out_b = grown_b
                for t in range(a):
                    out_sets[found, t] = comb_idx[t]
                out_b[found] = b
                found += 1
            for t in range(a):
                v = comb_idx[t]
                in_a[v] = False
                for e in range(v_ptr[v], v_ptr[v + 1]):
                    deg[v_idx[e]] -= 1
            # next combination in lexicographic order
            t = a - 1
            while t >= 0 and comb_idx[t] == n - a + t:
                t -= 1
            if t < 0:
                break
            comb_idx[t] += 1
            for s in range(t + 1, a):
                comb_idx[s] = comb_idx[s - 1] + 1
    return out_sets[:found], out_b[:found]


def _csr(lists) -> tuple[np.ndarray, np.ndarray]:
    ptr = np.zeros(len(lists) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(x) for x in lists])
    idx = np.array([y for x in lists for y in x], dtype=np.int64)
    return ptr, idx


def absorbing_bruteforce(G: TannerGraph, a_max: int, connected_only: bool = True,
                         budget: int = 50_000_000) -> list[tuple[tuple[int, ...], int]]:
    """All absorbing sets of size <= a_max as ``(variables, b)`` pairs."""
    a_max = min(int(a_max), G.n)
    total = sum(comb(G.n, a) for a in range(1, a_max + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} subsets exceed budget {budget}")
    if a_max < 1:
        return []
    v_ptr, v_idx = _csr(G.var_adj)
    c_ptr, c_idx = _csr(G.check_adj)
    sets, bs = _absorbing_search(v_ptr, v_idx, c_ptr, c_idx, G.n, G.m, a_max, bool(connected_only))
    return [(tuple(int(x) for x in row if x >= 0), int(b)) for row, b in zip(sets, bs)]


def absorbing_profile(found: list[tuple[tuple[int, ...], int]]) -> dict[tuple[int, int], int]:
    prof: dict[tuple[int, int], int] = {}
    for s, b in found:
        prof[(len(s), b)] = prof.get((len(s), b), 0) + 1
    return dict(sorted(prof.items()))


# ------------------------------------------------------------- distance

@nb.njit(cache=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@nb.njit(cache=True)
def _gray_min_weight(basis, logical_mask):
    """Minimum weight over span(basis) of vectors whose coefficient word hits logical_mask."""
    k, nw = basis.shape
    cur = np.zeros(nw, dtype=np.uint64)
    coeff = np.uint64(0)
    best = np.int64(1 << 60)
    total = np.int64(1) << k
    for i in range(1, total):
        # bit flipped between gray(i-1) and gray(i) is the lowest set bit of i
        j = 0
        while not (i >> j) & 1:
            j += 1
        for w in range(nw):
            cur[w] ^= basis[j, w]
        coeff ^= np.uint64(1) << np.uint64(j)
        if coeff & logical_mask:
            wt = 0
            for w in range(nw):
                wt += np.int64(_popcount64(cur[w]))
            if wt < best:
                best = wt
    return best


MAX_ENUM_DIM = 24


def _min_weight(basis_words: np.ndarray, logical_mask: int) -> int | None:
    k = basis_words.shape[0]
    if k > MAX_ENUM_DIM:
        raise BudgetExceeded(f"dimension {k} exceeds enumeration cap {MAX_ENUM_DIM}")
    if k == 0 or logical_mask == 0:
        return None
    best = int(_gray_min_weight(np.ascontiguousarray(basis_words, dtype=np.uint64), np.uint64(logical_mask)))
    return None if best >= 1 << 60 else best


def min_distance(H: BitMatrix) -> int | None:
    """Minimum distance of ker(H); ``None`` marks the zero code."""
    basis = kernel_basis(H)
    if not basis:
        return None
    words = np.stack([b.words for b in basis])
    return _min_weight(words, (1 << len(basis)) - 1)


def _logical_basis(H_check: BitMatrix, H_stab: BitMatrix) -> tuple[np.ndarray, int]:
    """Basis of ker(H_check) with rs(H_stab) first; returns (words, logical coefficient mask)."""
    stab, _ = _echelon(H_stab.data, H_stab.cols)
    rows = [r for r in stab]
    r = len(rows)
    ker = kernel_basis(H_check)
    acc = list(rows)
    current = len(acc)
    for v in ker:
        trial = np.vstack([np.array(acc, dtype=np.uint64).reshape(-1, v.words.size), v.words[None, :]])
        if len(_echelon(trial, H_check.cols)[1]) > current:
            acc.append(v.words)
            current += 1
    words = np.array(acc, dtype=np.uint64).reshape(-1, H_check.data.shape[1])
    mask = ((1 << len(acc)) - 1) ^ ((1 << r) - 1)
    return words, mask


@dataclass(frozen=True)
class CssParams:
    n: int
    k: int
    d: int | None  # None when k == 0 or when the search was skipped
    d_x: int | None = None
    d_z: int | None = None

    def as_tuple(self) -> tuple[int, int, int | None]:
        return self.n, self.k, self.d


def css_params(Hx: BitMatrix, Hz: BitMatrix, compute_distance: bool = True) -> CssParams:
    """Exact [[n, k, d]] by enumerating logical cosets."""
    if Hx.cols != Hz.cols:
        raise ValueError("Hx and Hz must have the same number of columns")
    if not (Hz @ Hx.T).is_zero():
        raise ValueError("Hz Hx^T != 0: the pair does not commute")
    n = Hx.cols
    k = n - rank(Hx) - rank(Hz)
    if k == 0 or not compute_distance:
        return CssParams(n, k, None)
    # Z-type logicals: ker(Hx) outside rs(Hz); X-type: ker(Hz) outside rs(Hx)
    wz, mz = _logical_basis(Hx, Hz)
    wx, mx = _logical_basis(Hz, Hx)
    d_z = _min_weight(wz, mz)
    d_x = _min_weight(wx, mx)
    return CssParams(n, k, min(d_x, d_z), d_x, d_z)


@nb.njit(cache=True)
def _shortest_through(indptr, indices, a, b):
    """Shortest path a -> b avoiding the edge (a, b); -1 if none."""
    nv = indptr.size - 1
    dist = np.full(nv, -1, dtype=np.int64)
    queue = np.empty(nv, dtype=np.int64)
    dist[a] = 0
    queue[0] = a
    head, tail = 0, 1
    while head < tail:
        x = queue[head]
        head += 1
        for e in range(indptr[x], indptr[x + 1]):
            y = indices[e]
            if (x == a and y == b) or (x == b and y == a):
                continue
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                if y == b:
                    return dist[y]
                queue[tail] = y
                tail += 1
    return -1


def shortest_cycle_through_edges(G: TannerGraph, edges) -> float:
    """Length of the shortest cycle using any of the (check, variable) edges."""
    indptr, indices = G.csr()
    best = INF
    for c, v in edges:
        d = int(_shortest_through(indptr, indices, int(c), G.m + int(v)))
        if d >= 0:
            best = min(best, d + 1)
    return best


# ------------------------------------------------ two-block certificates

@nb.njit(cache=True)
def _coset_scan(b0, kbasis, limit):
    """All b0 + span(kbasis) of popcount <= limit (single-word vectors)."""
    k = kbasis.size
    out = []
    cur = b0
    if np.int64(_popcount64(cur)) <= limit:
        out.append(cur)
    total = np.int64(1) << k
    for i in range(1, total):
        j = 0
        while not (i >> j) & 1:
            j += 1
        cur ^= kbasis[j]
        if np.int64(_popcount64(cur)) <= limit:
            out.append(cur)
    return out


class _Solver:
    """Preimages under a square GF(2) map given by its columns as ints."""

    def __init__(self, cols: list[int]):
        self.basis: dict[int, tuple[int, int]] = {}  # leading bit -> (image, preimage)
        kernel = []
        for j, c in enumerate(cols):
            img, pre = c, 1 << j
            while img:
                lead = img.bit_length() - 1
                if lead not in self.basis:
                    self.basis[lead] = (img, pre)
                    break
                bi, bp = self.basis[lead]
                img ^= bi
                pre ^= bp
            else:
                kernel.append(pre)
        self.kernel = kernel

    def solve(self, s: int) -> int | None:
        pre = 0
        while s:
            lead = s.bit_length() - 1
            if lead not in self.basis:
                return None
            bi, bp = self.basis[lead]
            s ^= bi
            pre ^= bp
        return pre


def _columns_as_ints(M: np.ndarray) -> list[int]:
    weights = 1 << np.arange(M.shape[0], dtype=object)
    return [int((M[:, j].astype(object) * weights).sum()) for j in range(M.shape[1])]


def two_block_min_logical(A: np.ndarray, B: np.ndarray, stab: BitMatrix, max_weight: int) -> int | None:
    """Smallest logical weight <= max_weight in ker([A | B]) outside rs(stab), else None.

    Any vector (a, b) of weight w has min(wt a, wt b) <= w // 2, so scanning
    every short half and the full coset of the other half is exhaustive.  A
    ``None`` result certifies that the distance exceeds ``max_weight``.
    """
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    N = A.shape[1]
    if A.shape != B.shape or N > 64:
        raise ValueError("need equal-shape blocks with at most 64 columns")
    from itertools import combinations

    ca, cb = _columns_as_ints(A), _columns_as_ints(B)
    found: set[tuple[int, int]] = set()
    for small_cols, other_cols, small_first in ((ca, cb, True), (cb, ca, False)):
        solver = _Solver(other_cols)
        kb = np.array(solver.kernel, dtype=np.uint64)
        for w in range(max_weight // 2 + 1):
            if kb.size > 30:
                raise BudgetExceeded("kernel of block too large to scan")
            for supp in combinations(range(N), w):
                s, x = 0, 0
                for t in supp:
                    s ^= small_cols[t]
                    x |= 1 << t
                y0 = solver.solve(s)
                if y0 is None:
                    continue
                for y in _coset_scan(np.uint64(y0), kb, max_weight - w):
                    y = int(y)
                    if x == 0 and y == 0:
                        continue
                    found.add((x, y) if small_first else (y, x))
    if not found:
        return None
    vecs = sorted(found, key=lambda ab: bin(ab[0]).count("1") + bin(ab[1]).count("1"))
    bits = np.zeros((len(vecs), 2 * N), dtype=np.uint8)
    for r, (a, b) in enumerate(vecs):
        for t in range(N):
            bits[r, t] = (a >> t) & 1
            bits[r, N + t] = (b >> t) & 1
    logical = ~RowSpace(stab).contains_batch(bits)
    if not logical.any():
        return None
    return int(bits[logical].sum(axis=1).min())
