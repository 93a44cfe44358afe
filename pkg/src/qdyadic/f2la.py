"""Bit-packed linear algebra over GF(2).

Rows are packed little-endian into ``uint64`` words: bit ``j`` of a row lives in
word ``j // 64`` at position ``j % 64``.  Every rank, kernel and product used
elsewhere in the package goes through this module.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

WORD = 64
_ONE = np.uint64(1)


def _nwords(n: int) -> int:
    return max(1, (n + WORD - 1) // WORD)


def _pack(bits: np.ndarray, n: int) -> np.ndarray:
    """Pack a (..., n) 0/1 array into (..., nwords) uint64."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    lead = bits.shape[:-1]
    nw = _nwords(n)
    padded = np.zeros(lead + (nw * WORD,), dtype=np.uint8)
    padded[..., :n] = bits
    packed = np.packbits(padded, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(lead + (nw,))


def _unpack(words: np.ndarray, n: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    as_bytes = words.view(np.uint8).reshape(words.shape[:-1] + (-1,))
    return np.unpackbits(as_bytes, axis=-1, bitorder="little")[..., :n]


def _popcount(words: np.ndarray) -> int:
    return int(np.unpackbits(np.ascontiguousarray(words, dtype="<u8").view(np.uint8)).sum())


class BitVector:
    """Immutable binary vector of fixed length."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray | None = None):
        if length < 0:
            raise ValueError("length must be nonnegative")
        self.length = int(length)
        if words is None:
            words = np.zeros(_nwords(length), dtype=np.uint64)
        words = np.array(words, dtype=np.uint64)
        words.setflags(write=False)
        self.words = words

    @classmethod
    def from_bits(cls, bits: Iterable[int] | np.ndarray) -> BitVector:
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
        return cls(arr.size, _pack(arr, arr.size))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> BitVector:
        arr = np.zeros(length, dtype=np.uint8)
        for i in support:
            if not 0 <= i < length:
                raise IndexError(f"index {i} out of range for length {length}")
            arr[i] = 1
        return cls(length, _pack(arr, length))

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length)

    def to_array(self) -> np.ndarray:
        return _unpack(self.words, self.length)

    def support(self) -> list[int]:
        return np.flatnonzero(self.to_array()).tolist()

    @property
    def weight(self) -> int:
        return _popcount(self.words)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return int((self.words[i // WORD] >> np.uint64(i % WORD)) & _ONE)

    def __xor__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.words ^ other.words)

    __add__ = __xor__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector({''.join(map(str, self.to_array()))})"


class BitMatrix:
    """Immutable dense binary matrix with rows packed into uint64 words."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        if data is None:
            data = np.zeros((self.rows, _nwords(self.cols)), dtype=np.uint64)
        data = np.array(data, dtype=np.uint64).reshape(self.rows, _nwords(self.cols))
        data.setflags(write=False)
        self.data = data

    @classmethod
    def from_dense(cls, array: Sequence[Sequence[int]] | np.ndarray) -> BitMatrix:
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls(arr.shape[0], arr.shape[1], _pack(arr & 1, arr.shape[1]))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: int | None = None) -> BitMatrix:
        if cols is None:
            if not rows:
                raise ValueError("cols required for an empty row list")
            cols = rows[0].length
        if any(r.length != cols for r in rows):
            raise ValueError("all rows must have identical length")
        data = np.stack([r.words for r in rows]) if rows else None
        return cls(len(rows), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_dense(self) -> np.ndarray:
        return _unpack(self.data, self.cols).astype(np.uint8)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def row_vectors(self) -> list[BitVector]:
        return [self.row(i) for i in range(self.rows)]

    def column(self, j: int) -> BitVector:
        return BitVector.from_bits(self.to_dense()[:, j])

    @property
    def T(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense().T)

    def weight(self) -> int:
        return _popcount(self.data)

    def is_zero(self) -> bool:
        return not self.data.any()

    def hstack(self, *others: BitMatrix) -> BitMatrix:
        return hstack([self, *others])

    def vstack(self, *others: BitMatrix) -> BitMatrix:
        return vstack([self, *others])

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return mat_mul(self, other)

    def __xor__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return BitMatrix(self.rows, self.cols, self.data ^ other.data)

    __add__ = __xor__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, weight={self.weight()})"


def hstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    if len({b.rows for b in blocks}) != 1:
        raise ValueError("row count mismatch")
    return BitMatrix.from_dense(np.hstack([b.to_dense() for b in blocks]))


def vstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    cols = {b.cols for b in blocks}
    if len(cols) != 1:
        raise ValueError("column count mismatch")
    return BitMatrix(sum(b.rows for b in blocks), cols.pop(), np.vstack([b.data for b in blocks]))


def _bit_column(data: np.ndarray, col: int) -> np.ndarray:
    return ((data[:, col // WORD] >> np.uint64(col % WORD)) & _ONE).astype(bool)


def _echelon(data: np.ndarray, cols: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of packed rows; returns (rows, pivot columns)."""
    work = np.array(data, dtype=np.uint64, copy=True)
    pivots: list[int] = []
    r = 0
    nrows = work.shape[0]
    for col in range(cols):
        if r == nrows:
            break
        hits = _bit_column(work, col)
        cand = np.flatnonzero(hits[r:])
        if cand.size == 0:
            continue
        p = r + int(cand[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
            hits[[r, p]] = hits[[p, r]]
        hits[r] = False
        work[hits] ^= work[r]
        pivots.append(col)
        r += 1
    return work[:r], pivots


def rank(M: BitMatrix) -> int:
    """GF(2) rank by packed-row Gaussian elimination."""
    return len(_echelon(M.data, M.cols)[1])


def kernel_basis(M: BitMatrix) -> list[BitVector]:
    """Basis of the right kernel ``{x : M x^T = 0}``."""
    reduced, pivots = _echelon(M.data, M.cols)
    dense = _unpack(reduced, M.cols) if len(pivots) else np.zeros((0, M.cols), dtype=np.uint8)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        x = np.zeros(M.cols, dtype=np.uint8)
        x[f] = 1
        for i, p in enumerate(pivots):
            x[p] = dense[i, f]
        basis.append(BitVector.from_bits(x))
    return basis


def kernel_matrix(M: BitMatrix) -> BitMatrix:
    """Kernel basis stacked as rows (possibly zero rows)."""
    return BitMatrix.from_rows(kernel_basis(M), cols=M.cols)


def mat_mul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    """GF(2) product, computed one row of ``A`` at a time."""
    if A.cols != B.rows:
        raise ValueError(f"dimension mismatch: {A.shape} @ {B.shape}")
    out = np.zeros((A.rows, B.data.shape[1]), dtype=np.uint64)
    for i in range(A.rows):
        idx = np.flatnonzero(_unpack(A.data[i], A.cols))
        if idx.size:
            out[i] = np.bitwise_xor.reduce(B.data[idx], axis=0)
    return BitMatrix(A.rows, B.cols, out)


def rowspace_contains(M: BitMatrix, x: BitVector) -> bool:
    """True iff ``x`` lies in the row space of ``M`` (rank comparison)."""
    if x.length != M.cols:
        raise ValueError("length mismatch")
    stacked = BitMatrix(M.rows + 1, M.cols, np.vstack([M.data, x.words[None, :]]))
    return rank(stacked) == rank(M)


class RowSpace:
    """Row space of a fixed matrix, reduced once for repeated membership tests."""

    def __init__(self, M: BitMatrix):
        self.cols = M.cols
        self._basis, self._pivots = _echelon(M.data, M.cols)

    @property
    def dimension(self) -> int:
        return len(self._pivots)

    def reduce_words(self, words: np.ndarray) -> np.ndarray:
        """Reduce a batch of packed rows (k, nwords) against the basis."""
        work = np.array(words, dtype=np.uint64, copy=True)
        for row, col in zip(self._basis, self._pivots):
            hit = _bit_column(work, col)
            work[hit] ^= row
        return work

    def contains(self, x: BitVector | np.ndarray) -> bool:
        words = x.words if isinstance(x, BitVector) else _pack(np.asarray(x), self.cols)
        return not self.reduce_words(words[None, :]).any()

    def contains_batch(self, bits: np.ndarray) -> np.ndarray:
        """Membership for each row of a dense (k, cols) 0/1 array."""
        return ~self.reduce_words(_pack(bits, self.cols)).any(axis=1)
