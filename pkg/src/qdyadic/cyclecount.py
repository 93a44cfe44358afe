"""Closed-form short-cycle counts for dyadic and quasi-dyadic Tanner graphs.

Cycles in a lifted graph project onto tailless backtrackless closed (TBC)
walks in the protograph.  A TBC walk whose XOR of edge shifts vanishes lifts
to ``N`` cycles, so cycle counts reduce to counting repeated values in small
multisets of partial shift sums.  All counts below follow that recipe; the
oracle module enumerates cycles directly and is used to validate them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numba as nb
import numpy as np

from .f2la import BitMatrix
from .lift import UNSET, Protograph, QuasiDyadicLayout, expand_layout, tanner_graph
from .oracle import INF, enumerate_cycles, girth_bfs

NOT_COMPUTED = None

# Cyclic check-row sequences (c1, c2, c3, c4) of the 21 nonequivalent TBC
# 8-walk patterns over rows h<i<j<k, encoded as role indices 0..3.  Variables
# u, v, v', u' sit between c1-c2, c2-c3, c3-c4 and c4-c1 respectively.
H, I, J, K = 0, 1, 2, 3
EIGHT_CYCLE_PATTERNS: tuple[tuple[int, int, int, int], ...] = (
    (H, I, H, I), (H, I, H, J), (H, I, H, K), (H, J, H, J), (H, J, H, K),
    (H, K, H, K), (H, J, I, J), (H, J, I, K), (H, K, I, K), (H, I, J, I),
    (H, I, J, K), (H, K, J, K), (H, I, K, I), (H, I, K, J), (H, J, K, J),
    (I, J, I, J), (I, J, I, K), (I, K, I, K), (I, K, J, K), (I, J, K, J),
    (J, K, J, K),
)
# 1-based pattern numbers with an internal symmetry (double traversal possible)
STARRED_PATTERNS = frozenset({1, 4, 6, 16, 18, 21})
# 1-based pattern numbers with no nontrivial equivalent walk of the same shape
SINGLE_COUNT_PATTERNS = frozenset({8, 11, 14})


def pattern_coefficient(number: int, N: int) -> str | int:
    """Lift multiplier for an 8-walk pattern: 'starred', N or N/2."""
    if number in STARRED_PATTERNS:
        return "starred"
    return N if number in SINGLE_COUNT_PATTERNS else N // 2


def _canonical_patterns() -> dict[int, list[int]]:
    """For s distinct rows, the 1-based patterns whose roles are exactly {0..s-1}."""
    out: dict[int, list[int]] = {2: [], 3: [], 4: []}
    for num, pat in enumerate(EIGHT_CYCLE_PATTERNS, start=1):
        roles = set(pat)
        if roles == set(range(len(roles))):
            out[len(roles)].append(num)
    return out


CANONICAL_PATTERNS = _canonical_patterns()  # {2: [1], 3: [2, 7, 10], 4: [8, 11, 14]}


# ----------------------------------------------------------- reports

@dataclass
class MsetRepetitionReport:
    """Repetition counts behind a closed-form cycle count."""

    classified: dict[str, int] = field(default_factory=dict)
    per_tuple: dict[tuple, dict[str, int]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.classified.values())


@dataclass
class CycleCensus:
    n4: int | None
    n6: int | None
    n8: int | None
    girth: float
    valid: dict[int, bool]

    def as_dict(self) -> dict:
        g = self.girth
        return {
            "n4": self.n4, "n6": self.n6, "n8": self.n8,
            "girth": "infinite" if g == INF else int(g),
            "valid": {str(k): v for k, v in self.valid.items()},
        }


# ----------------------------------------------------- single dyadic

def _check_supp(supp, ell: int) -> list[int]:
    s = [int(x) for x in supp]
    N = 1 << ell
    if len(set(s)) != len(s):
        raise ValueError("shifts must be distinct")
    if any(not 0 <= x < N for x in s):
        raise ValueError(f"shifts must lie in [0, {N})")
    return s


def count4_single_report(supp, ell: int) -> MsetRepetitionReport:
    """Classified repetitions of A = {(u, v, x_u ^ x_v) : u != v}."""
    x = _check_supp(supp, ell)
    w = len(x)
    elems = [(u, v, x[u] ^ x[v]) for u in range(w) for v in range(w) if u != v]
    rc = rnc = 0
    for a, (u, v, al) in enumerate(elems):
        for b, (u2, v2, al2) in enumerate(elems):
            if a == b or al != al2:
                continue
            if u == v2 and v == u2:
                rc += 1
            elif u != u2 and v != v2:
                rnc += 1
    return MsetRepetitionReport({"c": rc, "nc": rnc})


def count4_single(supp, ell: int) -> int:
    """Number of 4-cycles of the dyadic matrix with signature support ``supp``."""
    rep = count4_single_report(supp, ell)
    return (1 << ell) * (rep.classified["c"] + rep.classified["nc"]) // 4


def count6_single_report(supp, ell: int) -> MsetRepetitionReport:
    """Repetitions in A = {(u, v, w, x_u ^ x_v ^ x_w) : u != v, v != w}.

    Pairs with u != u' and w != w' are classified by the first matching
    condition: c1 (u=w', v=v', w=u'), c2 (v=u', w=v'), c3 (u=w, w'=u'),
    c4 (u=v', v=w'), otherwise nc.
    """
    x = _check_supp(supp, ell)
    n = len(x)
    elems = [(u, v, w, x[u] ^ x[v] ^ x[w])
             for u in range(n) for v in range(n) for w in range(n) if u != v and v != w]
    by_alpha: dict[int, list[tuple[int, int, int]]] = {}
    for u, v, w, al in elems:
        by_alpha.setdefault(al, []).append((u, v, w))
    counts = {"c1": 0, "c2": 0, "c3": 0, "c4": 0, "nc": 0}
    for group in by_alpha.values():
        for (u, v, w) in group:
            for (u2, v2, w2) in group:
                if u == u2 or w == w2:
                    continue
                if u == w2 and v == v2 and w == u2:
                    counts["c1"] += 1
                elif v == u2 and w == v2:
                    counts["c2"] += 1
                elif u == w and w2 == u2:
                    counts["c3"] += 1
                elif u == v2 and v == w2:
                    counts["c4"] += 1
                else:
                    counts["nc"] += 1
    return MsetRepetitionReport(counts)


def count6_single(supp, ell: int) -> int:
    """Number of 6-cycles of the dyadic matrix with signature support ``supp``."""
    total = count6_single_report(supp, ell).total
    num = (1 << ell) * total
    if num % 6:
        raise ArithmeticError("6-cycle repetition total not divisible as expected")
    return num // 6


# ----------------------------------------------------- quasi-dyadic

def _shift_array(L: QuasiDyadicLayout | np.ndarray) -> tuple[np.ndarray, int]:
    """Singleton-cell shifts with -1 for unset or zero cells."""
    if isinstance(L, np.ndarray):
        raise TypeError("pass a QuasiDyadicLayout")
    for i, row in enumerate(L.cells):
        for j, c in enumerate(row):
            if c is not UNSET and len(c) > 1:
                raise ValueError(f"cell ({i}, {j}) holds {len(c)} shifts; closed forms need "
                                 "permutation blocks, use the oracle instead")
    return L.shift_array(), L.N


def count4_quasi_report(L: QuasiDyadicLayout) -> MsetRepetitionReport:
    S, _ = _shift_array(L)
    rep = MsetRepetitionReport({"pairs": 0})
    for h, i in combinations(range(S.shape[0]), 2):
        ok = (S[h] >= 0) & (S[i] >= 0)
        vals = S[h][ok] ^ S[i][ok]
        _, rho = np.unique(vals, return_counts=True)
        reps = int((rho * (rho - 1) // 2).sum())
        rep.per_tuple[(h, i)] = {"pairs": reps}
        rep.classified["pairs"] += reps
    return rep


def count4_quasi(L: QuasiDyadicLayout) -> int:
    return L.N * count4_quasi_report(L).total


@nb.njit(cache=True)
def _count6_rows(S, h, i, j):
    n = S.shape[1]
    total = 0
    for m in range(n):
        if S[i, m] < 0 or S[j, m] < 0:
            continue
        for u in range(n):
            if u == m or S[h, u] < 0 or S[i, u] < 0:
                continue
            a1 = S[h, u] ^ S[i, u] ^ S[i, m]
            for u2 in range(n):
                if u2 == m or u2 == u or S[h, u2] < 0 or S[j, u2] < 0:
                    continue
                if a1 == (S[h, u2] ^ S[j, u2] ^ S[j, m]):
                    total += 1
    return total


def count6_quasi_report(L: QuasiDyadicLayout) -> MsetRepetitionReport:
    S, _ = _shift_array(L)
    rep = MsetRepetitionReport({"cross": 0})
    for h, i, j in combinations(range(S.shape[0]), 3):
        r = int(_count6_rows(S, h, i, j))
        rep.per_tuple[(h, i, j)] = {"cross": r}
        rep.classified["cross"] += r
    return rep


def count6_quasi(L: QuasiDyadicLayout) -> int:
    return L.N * count6_quasi_report(L).total


@nb.njit(cache=True)
def _count8_pattern(S, c1, c2, c3, c4):
    """Repetitions for one pattern: returns (c-type, non-c-type) counts."""
    n = S.shape[1]
    rc = 0
    rnc = 0
    for u in range(n):
        if S[c1, u] < 0 or S[c2, u] < 0:
            continue
        for v in range(n):
            if v == u or S[c2, v] < 0 or S[c3, v] < 0:
                continue
            a1 = S[c1, u] ^ S[c2, u] ^ S[c2, v] ^ S[c3, v]
            for u2 in range(n):
                if u2 == u or S[c1, u2] < 0 or S[c4, u2] < 0:
                    continue
                for v2 in range(n):
                    if v2 == v or v2 == u2 or S[c4, v2] < 0 or S[c3, v2] < 0:
                        continue
                    if a1 == (S[c1, u2] ^ S[c4, u2] ^ S[c4, v2] ^ S[c3, v2]):
                        if u == v2 and v == u2:
                            rc += 1
                        else:
                            rnc += 1
    return rc, rnc


def count8_quasi_report(L: QuasiDyadicLayout) -> MsetRepetitionReport:
    """Per (row subset, pattern number) repetitions; starred patterns split c / nc."""
    S, _ = _shift_array(L)
    rep = MsetRepetitionReport({"starred_c": 0, "starred_nc": 0, "half": 0, "full": 0})
    for s in (2, 3, 4):
        for rows in combinations(range(S.shape[0]), s):
            for num in CANONICAL_PATTERNS[s]:
                c1, c2, c3, c4 = (rows[r] for r in EIGHT_CYCLE_PATTERNS[num - 1])
                rc, rnc = _count8_pattern(S, c1, c2, c3, c4)
                rc, rnc = int(rc), int(rnc)
                if num in STARRED_PATTERNS:
                    entry = {"c": rc, "nc": rnc}
                    rep.classified["starred_c"] += rc
                    rep.classified["starred_nc"] += rnc
                else:
                    entry = {"r": rc + rnc}
                    key = "full" if num in SINGLE_COUNT_PATTERNS else "half"
                    rep.classified[key] += rc + rnc
                rep.per_tuple[(rows, num)] = entry
    return rep


class ClosedFormNotApplicable(ValueError):
    """The closed form has no integral value here; the layout has girth 4."""


def count8_quasi_scaled(L: QuasiDyadicLayout) -> int:
    """Four times the closed-form N_8; always an integer, handy for ranking."""
    c = count8_quasi_report(L).classified
    N = L.N
    return N * (c["starred_c"] + c["starred_nc"]) + 4 * N * c["full"] + 2 * N * c["half"]


def count8_quasi(L: QuasiDyadicLayout) -> int:
    """N_8 = sum of R* over starred patterns + N R (patterns 8, 11, 14) + N/2 R (others)."""
    scaled = count8_quasi_scaled(L)
    if scaled % 4:
        raise ClosedFormNotApplicable("8-cycle closed form is fractional; girth is 4")
    return scaled // 4


def has_girth_gt4(L: QuasiDyadicLayout) -> bool:
    """True iff every pairwise difference multiset A_{h,i} is repetition-free."""
    return count4_quasi_report(L).total == 0


# ------------------------------------------------------------ girth

def _as_graph(obj):
    if isinstance(obj, QuasiDyadicLayout):
        return tanner_graph(expand_layout(obj))
    if isinstance(obj, BitMatrix):
        return tanner_graph(obj)
    return obj


def girth(obj) -> float:
    """Exact girth of a layout, matrix or Tanner graph (``inf`` if acyclic)."""
    return girth_bfs(_as_graph(obj))


def census(L: QuasiDyadicLayout, oracle_check: bool = False) -> CycleCensus:
    """N4, N6, N8 with validity flags k < 2*girth.

    Permutation layouts use the closed forms; other layouts (or an explicit
    ``oracle_check``) go through exhaustive enumeration.
    """
    g = girth(L)
    valid = {k: k < 2 * g for k in (4, 6, 8)}
    if L.is_permutation_layout() and not oracle_check:
        counts = {4: count4_quasi(L), 6: count6_quasi(L), 8: count8_quasi(L)}
    else:
        inv = enumerate_cycles(_as_graph(L), 8)
        counts = {k: inv[k] for k in (4, 6, 8)}
        if L.is_permutation_layout():
            closed = {4: count4_quasi(L), 6: count6_quasi(L), 8: count8_quasi(L)}
            for k in (4, 6, 8):
                if valid[k] and closed[k] != counts[k]:
                    raise AssertionError(f"closed-form N{k}={closed[k]} disagrees with oracle {counts[k]}")
        valid = {k: True for k in (4, 6, 8)}  # oracle counts are always exact
    shown = {k: counts[k] if valid[k] else NOT_COMPUTED for k in (4, 6, 8)}
    return CycleCensus(shown[4], shown[6], shown[8], g, valid)


def protograph_girth(P: Protograph) -> float:
    """Girth of the base multigraph: 2 when any entry exceeds one."""
    B = P.as_array()
    if (B > 1).any():
        return 2
    return girth_bfs(tanner_graph((B > 0).astype(np.uint8)))


def girth_bound_lift(P: Protograph) -> int:
    """Upper bound 2 * girth(protograph) on the girth of any dyadic lift."""
    g = protograph_girth(P)
    if g == INF:
        raise ValueError("protograph is acyclic; lifts have no girth bound")
    return int(2 * g)


def n4_lower_bound_single(omega: int, ell: int) -> int:
    """Guaranteed 4-cycles of a weight-omega dyadic: 2^(ell-2) omega (omega-1)."""
    if omega < 2:
        return 0
    return (1 << ell) * omega * (omega - 1) // 4


def n6_condition1_single(omega: int, ell: int) -> int:
    """6-cycles coming from the walks (u, v, w, u, v, w) alone."""
    return (1 << ell) * omega * (omega - 1) * (omega - 2) // 6 if omega >= 3 else 0

