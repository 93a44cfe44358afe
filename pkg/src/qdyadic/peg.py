"""Progressive edge growth for quasi-dyadic permutation layouts.

Cells are filled one at a time.  For each cell we compute the shifts that
would close a 4-cycle (and, for target 6, a 6-cycle) through it using only the
cells assigned so far, then draw from the complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .cyclecount import count4_quasi, count6_quasi, count8_quasi_scaled
from .lift import UNSET, QuasiDyadicLayout

TARGETS = (6, 4)


class Ordering(str, Enum):
    ROW = "row"
    COL = "col"
    RANDOM = "random"


class Strategy(str, Enum):
    RANDOM = "random"
    MIN = "min"
    MAX = "max"
    AVG = "avg"


@dataclass(frozen=True)
class ForbiddenSet:
    position: tuple[int, int]
    g: int
    values: frozenset[int]


@dataclass(frozen=True)
class PegConfig:
    n_c: int
    n_v: int
    ell: int
    ordering: Ordering = Ordering.COL
    strategy: Strategy = Strategy.RANDOM
    seed: int = 0
    paper_literal: bool = False
    # optional 0/1 grid; 0 forces a zero block that PEG never fills
    mask: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "ordering", Ordering(self.ordering))
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        if self.n_c < 1 or self.n_v < 1 or self.ell < 0:
            raise ValueError("need n_c, n_v >= 1 and ell >= 0")
        if self.mask is not None:
            m = np.asarray(self.mask)
            if m.shape != (self.n_c, self.n_v):
                raise ValueError("mask shape must be (n_c, n_v)")


@dataclass(frozen=True)
class PegStep:
    position: tuple[int, int]
    level: int | None  # target girth met at this step, None when both failed
    candidates: int
    value: int


@dataclass
class PegRun:
    layout: QuasiDyadicLayout
    steps: list[PegStep] = field(default_factory=list)

    @property
    def all_steps_at(self) -> int | None:
        """Smallest level met across steps (None if some step met neither)."""
        levels = [s.level for s in self.steps]
        if any(lv is None for lv in levels):
            return None
        return min(levels) if levels else max(TARGETS)


def positions(cfg: PegConfig, rng: np.random.Generator) -> list[tuple[int, int]]:
    if cfg.ordering is Ordering.ROW:
        pos = [(i, j) for i in range(cfg.n_c) for j in range(cfg.n_v)]
    elif cfg.ordering is Ordering.COL:
        pos = [(i, j) for j in range(cfg.n_v) for i in range(cfg.n_c)]
    else:
        pos = [(i, j) for i in range(cfg.n_c) for j in range(cfg.n_v)]
        order = rng.permutation(len(pos))
        pos = [pos[t] for t in order]
    if cfg.mask is not None:
        pos = [p for p in pos if cfg.mask[p[0]][p[1]]]
    return pos


def forbidden_set(L: QuasiDyadicLayout, pos: tuple[int, int], g: int) -> ForbiddenSet:
    """Shifts for ``pos`` that close a cycle of length <= g through it.

    Only assigned singleton cells take part; unset and zero cells carry no edge.
    """
    if g not in (4, 6):
        raise ValueError("g must be 4 or 6")
    l, k = pos
    if L.cell(l, k) is not UNSET:
        raise ValueError(f"position {pos} is already set")
    for row in L.cells:
        for c in row:
            if c is not UNSET and len(c) > 1:
                raise ValueError("forbidden sets need unset or singleton cells")
    S = L.shift_array()
    n_c, n_v = S.shape
    vals: set[int] = set()
    rows = [a for a in range(n_c) if a != l]
    cols = [b for b in range(n_v) if b != k]
    # 4-walk l -k- a -b- l
    for a in rows:
        if S[a, k] < 0:
            continue
        for b in cols:
            if S[a, b] >= 0 and S[l, b] >= 0:
                vals.add(int(S[a, k] ^ S[a, b] ^ S[l, b]))
    if g == 6:
        # 6-walk l -k- a -b- c -d- l with rows l, a, c and columns k, b, d distinct
        for a in rows:
            if S[a, k] < 0:
                continue
            for c in rows:
                if c == a:
                    continue
                for b in cols:
                    if S[a, b] < 0 or S[c, b] < 0:
                        continue
                    head = S[a, k] ^ S[a, b] ^ S[c, b]
                    for d in cols:
                        if d == b or S[c, d] < 0 or S[l, d] < 0:
                            continue
                        vals.add(int(head ^ S[c, d] ^ S[l, d]))
    return ForbiddenSet(pos, g, frozenset(vals))


def _objective(L: QuasiDyadicLayout, level: int | None) -> int:
    """Cycle count minimized at a step: the first length not excluded by the level."""
    if level == 6:
        return count8_quasi_scaled(L)
    if level == 4:
        return count6_quasi(L)
    return count4_quasi(L)


def _select(cfg: PegConfig, L: QuasiDyadicLayout, pos, cands: np.ndarray, level,
            rng: np.random.Generator) -> int:
    if cfg.strategy is Strategy.RANDOM:
        return int(rng.choice(cands))
    scores = np.array([_objective(L.with_cell(*pos, [int(a)]), level) for a in cands])
    if cfg.strategy is Strategy.MIN:
        M = cands[scores == scores.min()]
    elif cfg.strategy is Strategy.MAX:
        M = cands[scores == scores.max()]
    else:
        target = int(np.floor(np.median(scores)))
        gap = np.abs(scores - target)
        M = cands[gap == gap.min()]
    if level is None and cfg.paper_literal:
        return int(rng.integers(L.N))
    return int(rng.choice(np.sort(M)))


def peg_run(cfg: PegConfig) -> PegRun:
    """Greedy construction; every step records which target girth it met."""
    rng = np.random.default_rng(cfg.seed)
    N = 1 << cfg.ell
    if cfg.mask is None:
        cells = [[UNSET] * cfg.n_v for _ in range(cfg.n_c)]
    else:
        cells = [[UNSET if cfg.mask[i][j] else None for j in range(cfg.n_v)] for i in range(cfg.n_c)]
    L = QuasiDyadicLayout(cfg.ell, cells)
    run = PegRun(L)
    everything = np.arange(N)
    for pos in positions(cfg, rng):
        level = None
        cands = everything
        for g in TARGETS:
            forb = forbidden_set(L, pos, g).values
            allowed = np.array([a for a in range(N) if a not in forb], dtype=np.int64)
            if allowed.size:
                level, cands = g, allowed
                break
        value = _select(cfg, L, pos, cands, level, rng)
        L = L.with_cell(*pos, [value])
        run.steps.append(PegStep(pos, level, int(cands.size), value))
    run.layout = L
    return run


def peg_construct(cfg: PegConfig) -> QuasiDyadicLayout:
    """Girth-greedy PEG with uniform draws from the allowed shifts."""
    if cfg.strategy is not Strategy.RANDOM:
        cfg = replace(cfg, strategy=Strategy.RANDOM)
    return peg_run(cfg).layout


def peg_construct_min_cycles(cfg: PegConfig) -> QuasiDyadicLayout:
    """PEG that also ranks allowed shifts by the next cycle count (min, max or median)."""
    if cfg.strategy is Strategy.RANDOM:
        raise ValueError("strategy must be min, max or avg")
    return peg_run(cfg).layout
