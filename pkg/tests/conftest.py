import numpy as np
import pytest

from qdyadic.lift import QuasiDyadicLayout

ACCEPTANCE_LINES: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.setdefault(criterion, []).append((ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE_LINES):
        parts = ACCEPTANCE_LINES[c]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts)
        terminalreporter.write_line(f"criterion {c:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def dense_rank(M: np.ndarray) -> int:
    """Plain Gaussian elimination over GF(2), used as an independent reference."""
    A = np.array(M, dtype=np.uint8) % 2
    r = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
        if r == rows:
            break
    return r


@pytest.fixture
def girth6_layout() -> QuasiDyadicLayout:
    return QuasiDyadicLayout.from_shifts(4, [[0, 0, 0, 0, 0], [0, 1, 2, 3, 4], [0, 2, 4, 6, 8]])


@pytest.fixture
def cross_supports() -> tuple[list[int], list[int]]:
    # 1-based labels {1,5,6,7,11,14} and {4,5,6,8,10,13}
    return [0, 4, 5, 6, 10, 13], [3, 4, 5, 7, 9, 12]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
