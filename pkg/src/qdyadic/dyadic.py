"""The ring of 2^ell x 2^ell dyadic matrices over GF(2).

A dyadic matrix is fixed by its first row (the signature): entry ``(x, y)``
equals ``signature[x ^ y]``.  Indices are 0-based integers whose binary digits
are the coordinates of a vector in F_2^ell, so XOR is vector addition.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .f2la import BitMatrix, BitVector, rank

MAX_CENSUS_ELL = 4


def _check_ell(ell: int) -> int:
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    return int(ell)


def from_one_based(support: Iterable[int]) -> list[int]:
    """Convert 1-based support labels (x = 1 + sum x_i 2^(i-1)) to 0-based ints."""
    out = []
    for s in support:
        if s < 1:
            raise ValueError(f"1-based index must be >= 1, got {s}")
        out.append(int(s) - 1)
    return out


def to_one_based(support: Iterable[int]) -> list[int]:
    return [int(s) + 1 for s in support]


class DyadicMatrix:
    """Dyadic matrix stored as ``(ell, signature)``."""

    __slots__ = ("ell", "signature")

    def __init__(self, ell: int, signature: BitVector):
        ell = _check_ell(ell)
        if signature.length != 1 << ell:
            raise ValueError(f"signature length {signature.length} != 2^{ell}")
        self.ell = ell
        self.signature = signature

    @classmethod
    def from_support(cls, ell: int, support: Iterable[int], one_based: bool = False) -> DyadicMatrix:
        ell = _check_ell(ell)
        supp = from_one_based(support) if one_based else list(support)
        return cls(ell, BitVector.from_support(1 << ell, supp))

    @classmethod
    def from_bits(cls, bits: Iterable[int] | np.ndarray) -> DyadicMatrix:
        sig = BitVector.from_bits(bits)
        n = sig.length
        if n == 0 or n & (n - 1):
            raise ValueError("signature length must be a power of two")
        return cls(n.bit_length() - 1, sig)

    @classmethod
    def from_int(cls, ell: int, mask: int) -> DyadicMatrix:
        """Signature whose bit ``i`` is bit ``i`` of ``mask``."""
        n = 1 << _check_ell(ell)
        return cls.from_support(ell, [i for i in range(n) if (mask >> i) & 1])

    @classmethod
    def zero(cls, ell: int) -> DyadicMatrix:
        return cls(ell, BitVector.zeros(1 << _check_ell(ell)))

    @classmethod
    def identity(cls, ell: int) -> DyadicMatrix:
        return cls.from_support(ell, [0])

    @property
    def N(self) -> int:
        return 1 << self.ell

    @property
    def support(self) -> list[int]:
        return self.signature.support()

    @property
    def weight(self) -> int:
        return self.signature.weight

    def to_int(self) -> int:
        return sum(1 << i for i in self.support)

    def expand(self) -> BitMatrix:
        return expand(self)

    def __add__(self, other: DyadicMatrix) -> DyadicMatrix:
        return add(self, other)

    def __mul__(self, other: DyadicMatrix) -> DyadicMatrix:
        return mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DyadicMatrix):
            return NotImplemented
        return self.ell == other.ell and self.signature == other.signature

    def __hash__(self) -> int:
        return hash((self.ell, self.signature))

    def __repr__(self) -> str:
        return f"DyadicMatrix(ell={self.ell}, support={self.support})"

    def to_json(self) -> dict:
        return {"ell": self.ell, "support": self.support}

    @classmethod
    def from_json(cls, obj: dict) -> DyadicMatrix:
        return cls.from_support(obj["ell"], obj["support"])


@dataclass(frozen=True)
class DyadicPermutation:
    """The weight-one dyadic matrix P_shift."""

    ell: int
    shift: int

    def __post_init__(self):
        _check_ell(self.ell)
        if not 0 <= self.shift < (1 << self.ell):
            raise ValueError(f"shift {self.shift} outside [0, 2^{self.ell})")

    def as_dyadic(self) -> DyadicMatrix:
        return DyadicMatrix.from_support(self.ell, [self.shift])

    def expand(self) -> BitMatrix:
        return expand(self.as_dyadic())

    def __mul__(self, other: DyadicPermutation) -> DyadicPermutation:
        return perm_mul(self, other)


def _same_ell(a, b) -> None:
    if a.ell != b.ell:
        raise ValueError(f"ell mismatch: {a.ell} vs {b.ell}")


def expand_dense(D: DyadicMatrix) -> np.ndarray:
    """Dense N x N uint8 expansion."""
    idx = np.arange(D.N)
    return D.signature.to_array()[idx[:, None] ^ idx[None, :]].astype(np.uint8)


def expand(D: DyadicMatrix) -> BitMatrix:
    """Full N x N matrix with entry (x, y) = signature[x ^ y]."""
    return BitMatrix.from_dense(expand_dense(D))


def add(D1: DyadicMatrix, D2: DyadicMatrix) -> DyadicMatrix:
    _same_ell(D1, D2)
    return DyadicMatrix(D1.ell, D1.signature ^ D2.signature)


def mul(D1: DyadicMatrix, D2: DyadicMatrix) -> DyadicMatrix:
    """Product via sigma(D_u D_v) = u D_v: XOR of shifted copies of v."""
    _same_ell(D1, D2)
    idx = np.arange(D1.N)
    v = D2.signature.to_array()
    out = np.zeros(D1.N, dtype=np.uint8)
    for a in D1.support:
        out ^= v[idx ^ a]
    return DyadicMatrix(D1.ell, BitVector.from_bits(out))


def perm_mul(P1: DyadicPermutation, P2: DyadicPermutation) -> DyadicPermutation:
    _same_ell(P1, P2)
    return DyadicPermutation(P1.ell, P1.shift ^ P2.shift)


def is_subspace_or_coset(supp: Iterable[int]) -> bool:
    """True iff the set is an affine subspace x0 + V of F_2^ell."""
    s = set(int(x) for x in supp)
    if not s:
        raise ValueError("support must be nonempty")
    size = len(s)
    if size & (size - 1):
        return False
    s0 = next(iter(s))
    shifted = {x ^ s0 for x in s}
    return all((a ^ b) in shifted for a in shifted for b in shifted)


def dyadic_rank(D: DyadicMatrix) -> int:
    """Rank; N/|supp| when the support is an affine subspace, else elimination."""
    supp = D.support
    if not supp:
        return 0
    if is_subspace_or_coset(supp):
        return D.N // len(supp)
    return rank(expand(D))


def rank_census(ell: int) -> dict[int, int]:
    """Histogram of rank over all 2^(2^ell) signatures (ell <= 4)."""
    ell = _check_ell(ell)
    if ell > MAX_CENSUS_ELL:
        raise ValueError(f"rank_census supports ell <= {MAX_CENSUS_ELL}")
    n = 1 << ell
    counts: Counter[int] = Counter()
    for mask in range(1 << n):
        bits = [(mask >> i) & 1 for i in range(n)]
        rows = [sum(bits[x ^ y] << y for y in range(n)) for x in range(n)]
        counts[_int_rank(rows)] += 1
    return dict(sorted(counts.items()))


def _int_rank(rows: list[int]) -> int:
    """Rank of rows given as Python int bitmasks (XOR basis insertion)."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)  # descending leading bits keep the min() reduction exact
    return len(basis)


class CodeParams(NamedTuple):
    n: int
    k: int
    d: int | None  # None for the zero code


def dyadic_code_params(D: DyadicMatrix) -> tuple[CodeParams, CodeParams]:
    """Parameters of rs(D) and its dual ker(D) for affine-subspace supports."""
    supp = D.support
    if not supp or not is_subspace_or_coset(supp):
        raise ValueError("support is not a subspace or coset; use an exact distance oracle")
    N = D.N
    size = len(supp)
    k = N // size
    row = CodeParams(N, k, size)
    dual_k = N - k
    if dual_k == 0:
        dual = CodeParams(N, 0, None)
    else:
        dual = CodeParams(N, dual_k, 2)
    return row, dual


def self_orthogonality_check(D: DyadicMatrix) -> bool:
    """True iff D*D = 0, i.e. rs(D) is self-orthogonal."""
    return mul(D, D).weight == 0
