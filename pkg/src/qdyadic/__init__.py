"""Dyadic and quasi-dyadic LDPC and CSS codes."""

__version__ = "0.1.0"

import numba as _numba  # noqa: E402

# prefer OpenMP over an outdated TBB; results do not depend on the layer
_numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

from .dyadic import DyadicMatrix, DyadicPermutation, dyadic_rank, rank_census  # noqa: E402
from .f2la import BitMatrix, BitVector, kernel_basis, rank  # noqa: E402
from .lift import QuasiDyadicLayout, TannerGraph, expand_layout, tanner_graph  # noqa: E402

__all__ = [
    "BitMatrix", "BitVector", "DyadicMatrix", "DyadicPermutation", "QuasiDyadicLayout",
    "TannerGraph", "dyadic_rank", "expand_layout", "kernel_basis", "rank", "rank_census",
    "tanner_graph",
]
