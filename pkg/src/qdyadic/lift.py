"""Protographs, quasi-dyadic layouts and their lifted Tanner graphs."""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .f2la import BitMatrix


class _Unset:
    """Marker for a cell that has not been assigned yet (distinct from a zero block)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNSET"

    def __reduce__(self):
        return (_Unset, ())


UNSET = _Unset()


@dataclass(frozen=True)
class Protograph:
    base: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.base}
        if len(widths) > 1:
            raise ValueError("ragged base matrix")
        if any(b < 0 for r in self.base for b in r):
            raise ValueError("base entries must be nonnegative")

    @property
    def n_c(self) -> int:
        return len(self.base)

    @property
    def n_v(self) -> int:
        return len(self.base[0]) if self.base else 0

    def as_array(self) -> np.ndarray:
        return np.array(self.base, dtype=np.int64).reshape(self.n_c, self.n_v)


Cell = frozenset | _Unset


def _as_cell(c, N: int) -> Cell:
    if c is UNSET or c == "unset":
        return UNSET
    if c is None:
        return frozenset()
    if isinstance(c, (int, np.integer)):
        c = [int(c)]
    items = [int(s) for s in c]
    if len(set(items)) != len(items):
        raise ValueError(f"duplicate shifts in cell {items}")
    for s in items:
        if not 0 <= s < N:
            raise ValueError(f"shift {s} outside [0, {N})")
    return frozenset(items)


class QuasiDyadicLayout:
    """Grid of block cells, each a set of dyadic permutation shifts.

    An empty set is a zero block; ``UNSET`` marks a cell still awaiting a value.
    """

    __slots__ = ("ell", "cells")

    def __init__(self, ell: int, cells: Sequence[Sequence]):
        if ell < 0:
            raise ValueError("ell must be nonnegative")
        self.ell = int(ell)
        N = 1 << self.ell
        rows = tuple(tuple(_as_cell(c, N) for c in row) for row in cells)
        if not rows or len({len(r) for r in rows}) != 1 or not rows[0]:
            raise ValueError("cells must form a nonempty rectangular grid")
        self.cells = rows

    @classmethod
    def from_shifts(cls, ell: int, shifts: Sequence[Sequence[int | None]]) -> QuasiDyadicLayout:
        """Permutation layout: one shift per cell, ``None`` for a zero block."""
        return cls(ell, [[frozenset() if s is None else [s] for s in row] for row in shifts])

    @classmethod
    def unset(cls, ell: int, n_c: int, n_v: int) -> QuasiDyadicLayout:
        return cls(ell, [[UNSET] * n_v for _ in range(n_c)])

    @property
    def N(self) -> int:
        return 1 << self.ell

    @property
    def n_c(self) -> int:
        return len(self.cells)

    @property
    def n_v(self) -> int:
        return len(self.cells[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_c, self.n_v

    def cell(self, i: int, j: int) -> Cell:
        return self.cells[i][j]

    def is_complete(self) -> bool:
        return all(c is not UNSET for row in self.cells for c in row)

    def is_permutation_layout(self) -> bool:
        """Every cell assigned and holding exactly one shift."""
        return all(c is not UNSET and len(c) == 1 for row in self.cells for c in row)

    def shift_array(self) -> np.ndarray:
        """Single shifts as an int array; -1 where a cell is unset or not a singleton."""
        out = np.full(self.shape, -1, dtype=np.int64)
        for i, row in enumerate(self.cells):
            for j, c in enumerate(row):
                if c is not UNSET and len(c) == 1:
                    out[i, j] = next(iter(c))
        return out

    def with_cell(self, i: int, j: int, value) -> QuasiDyadicLayout:
        cells = [list(r) for r in self.cells]
        cells[i][j] = value
        return QuasiDyadicLayout(self.ell, cells)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuasiDyadicLayout):
            return NotImplemented
        return self.ell == other.ell and self.cells == other.cells

    def __hash__(self) -> int:
        return hash((self.ell, self.cells))

    def __repr__(self) -> str:
        return f"QuasiDyadicLayout(ell={self.ell}, {self.n_c}x{self.n_v})"

    def to_json(self) -> dict:
        def enc(c):
            if c is UNSET:
                return "unset"
            return sorted(c) if c else None

        return {
            "ell": self.ell,
            "n_c": self.n_c,
            "n_v": self.n_v,
            "cells": [[enc(c) for c in row] for row in self.cells],
        }

    @classmethod
    def from_json(cls, obj: dict) -> QuasiDyadicLayout:
        layout = cls(obj["ell"], obj["cells"])
        if layout.shape != (obj.get("n_c", layout.n_c), obj.get("n_v", layout.n_v)):
            raise ValueError("n_c/n_v do not match the cell grid")
        return layout


def save_layout(layout: QuasiDyadicLayout, path: str | Path) -> None:
    Path(path).write_text(json.dumps(layout.to_json()))


def load_layout(path: str | Path) -> QuasiDyadicLayout:
    return QuasiDyadicLayout.from_json(json.loads(Path(path).read_text()))


def expand_layout_dense(L: QuasiDyadicLayout) -> np.ndarray:
    N = L.N
    idx = np.arange(N)
    xor = idx[:, None] ^ idx[None, :]
    H = np.zeros((L.n_c * N, L.n_v * N), dtype=np.uint8)
    for i, row in enumerate(L.cells):
        for j, c in enumerate(row):
            if c is UNSET:
                raise ValueError(f"cell ({i}, {j}) is unset")
            if c:
                sig = np.zeros(N, dtype=np.uint8)
                sig[list(c)] = 1
                H[i * N:(i + 1) * N, j * N:(j + 1) * N] = sig[xor]
    return H


def expand_layout(L: QuasiDyadicLayout) -> BitMatrix:
    """Scalar parity-check matrix: block (i, j) is the sum of P_s over the cell."""
    return BitMatrix.from_dense(expand_layout_dense(L))


def protograph_of(L: QuasiDyadicLayout) -> Protograph:
    if not L.is_complete():
        raise ValueError("layout has unset cells")
    return Protograph(tuple(tuple(len(c) for c in row) for row in L.cells))


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite graph; ``check_adj[i]`` lists the variables in check ``i``."""

    m: int
    n: int
    check_adj: tuple[tuple[int, ...], ...]

    @property
    def var_adj(self) -> tuple[tuple[int, ...], ...]:
        acc: list[list[int]] = [[] for _ in range(self.n)]
        for c, vs in enumerate(self.check_adj):
            for v in vs:
                acc[v].append(c)
        return tuple(tuple(a) for a in acc)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.check_adj)

    def check_degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.check_adj], dtype=np.int64)

    def var_degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for a in self.check_adj:
            deg[list(a)] += 1
        return deg

    def biadjacency(self) -> np.ndarray:
        H = np.zeros((self.m, self.n), dtype=np.uint8)
        for c, vs in enumerate(self.check_adj):
            H[c, list(vs)] = 1
        return H

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Undirected adjacency of all m+n vertices (checks first) in CSR form."""
        A = adjacency_dense(self.biadjacency())
        indptr = np.concatenate([[0], np.cumsum(A.sum(axis=1))]).astype(np.int64)
        indices = np.nonzero(A)[1].astype(np.int64)
        return indptr, indices


def tanner_graph(H: BitMatrix | np.ndarray) -> TannerGraph:
    dense = H.to_dense() if isinstance(H, BitMatrix) else np.asarray(H, dtype=np.uint8)
    adj = tuple(tuple(np.flatnonzero(row).tolist()) for row in dense)
    return TannerGraph(dense.shape[0], dense.shape[1], adj)


def adjacency_dense(H: np.ndarray) -> np.ndarray:
    m, n = H.shape
    A = np.zeros((m + n, m + n), dtype=np.uint8)
    A[:m, m:] = H
    A[m:, :m] = H.T
    return A


def adjacency_of(H: BitMatrix) -> BitMatrix:
    """Symmetric (m+n)x(m+n) matrix [[0, H], [H^T, 0]]."""
    return BitMatrix.from_dense(adjacency_dense(H.to_dense()))


def write_alist(H: BitMatrix | np.ndarray, path: str | Path) -> None:
    """Standard alist: n m, max degrees, degree lists, 1-based neighbour lists."""
    dense = H.to_dense() if isinstance(H, BitMatrix) else np.asarray(H, dtype=np.uint8)
    m, n = dense.shape
    cols = [np.flatnonzero(dense[:, j]) + 1 for j in range(n)]
    rows = [np.flatnonzero(dense[i]) + 1 for i in range(m)]
    max_col = max((len(c) for c in cols), default=0)
    max_row = max((len(r) for r in rows), default=0)

    def pad(lst, width):
        return " ".join(str(x) for x in list(lst) + [0] * (width - len(lst)))

    lines = [f"{n} {m}", f"{max_col} {max_row}",
             " ".join(str(len(c)) for c in cols), " ".join(str(len(r)) for r in rows)]
    lines += [pad(c, max_col) for c in cols]
    lines += [pad(r, max_row) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def read_alist(path: str | Path) -> BitMatrix:
    tokens = [int(t) for t in Path(path).read_text().split()]
    it = iter(tokens)
    n, m = next(it), next(it)
    max_col, _ = next(it), next(it)
    col_deg = [next(it) for _ in range(n)]
    for _ in range(m):
        next(it)
    H = np.zeros((m, n), dtype=np.uint8)
    for j in range(n):
        entries = [next(it) for _ in range(max_col)]
        for e in entries[:col_deg[j]]:
            H[e - 1, j] = 1
    return BitMatrix.from_dense(H)


def layout_from_blocks(ell: int, blocks: Iterable[Iterable[Iterable[int] | None]]) -> QuasiDyadicLayout:
    """Layout from nested shift collections (None or [] for zero blocks)."""
    return QuasiDyadicLayout(ell, [[frozenset() if b is None else list(b) for b in row] for row in blocks])
