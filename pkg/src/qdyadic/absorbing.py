"""Absorbing sets of boundary dyadic layouts.

The layouts here all split into disjoint complete bipartite components, where
a variable subset inside one component is absorbing exactly when its size is
even.  Counts follow the connected-induced-subgraph convention: a set is
counted only if it lies inside a single component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .dyadic import DyadicMatrix, expand
from .lift import QuasiDyadicLayout, TannerGraph, expand_layout, tanner_graph
from .oracle import absorbing_bruteforce, absorbing_profile


@dataclass
class AbsorbingProfile:
    counts: dict[tuple[int, int], int]
    connected_only: bool = True
    descriptor: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def per_a(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (a, _b), c in self.counts.items():
            out[a] = out.get(a, 0) + c
        return dict(sorted(out.items()))

    def as_dict(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "connected_only": self.connected_only,
            "counts": [{"a": a, "b": b, "count": c} for (a, b), c in sorted(self.counts.items())],
            "total": self.total,
            **self.notes,
        }


def _even_sizes(limit: int) -> range:
    return range(2, limit + 1, 2)


def count_1xn(ell: int, n: int) -> AbsorbingProfile:
    """1 x n row of dyadic permutations: 2^ell stars K_{1,n}; total 2^ell (2^(n-1) - 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    N = 1 << ell
    counts = {(a, 0): N * comb(n, a) for a in _even_sizes(n)}
    prof = AbsorbingProfile(counts, True, f"1x{n} permutation row, ell={ell}")
    assert prof.total == N * (2 ** (n - 1) - 1)
    return prof


def count_allones(ell: int) -> AbsorbingProfile:
    """All-ones dyadic (one K_{N,N}): C(N, a) sets per even a, 2^(N-1) - 1 in total."""
    N = 1 << ell
    counts = {(a, 0): comb(N, a) for a in _even_sizes(N)}
    prof = AbsorbingProfile(counts, True, f"all-ones dyadic, ell={ell}")
    assert prof.total == 2 ** (N - 1) - 1
    return prof


@dataclass(frozen=True)
class Component:
    checks: tuple[int, ...]
    variables: tuple[int, ...]
    edges: int

    @property
    def is_complete_bipartite(self) -> bool:
        return self.edges == len(self.checks) * len(self.variables)


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[Component, ...]

    @property
    def all_complete(self) -> bool:
        return all(c.is_complete_bipartite for c in self.components)

    def shapes(self) -> list[tuple[int, int]]:
        return [(len(c.checks), len(c.variables)) for c in self.components]


def _graph(obj) -> TannerGraph:
    if isinstance(obj, TannerGraph):
        return obj
    if isinstance(obj, QuasiDyadicLayout):
        return tanner_graph(expand_layout(obj))
    if isinstance(obj, DyadicMatrix):
        return tanner_graph(expand(obj))
    return tanner_graph(obj)


def components(obj) -> ComponentReport:
    """Connected components of the Tanner graph (isolated nodes omitted)."""
    G = _graph(obj)
    parent = list(range(G.m + G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c, vs in enumerate(G.check_adj):
        for v in vs:
            ra, rb = find(c), find(G.m + v)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, list[int]] = {}
    deg = np.concatenate([G.check_degrees(), G.var_degrees()])
    for x in range(G.m + G.n):
        if deg[x]:
            groups.setdefault(find(x), []).append(x)
    comps = []
    for members in groups.values():
        checks = tuple(x for x in members if x < G.m)
        variables = tuple(x - G.m for x in members if x >= G.m)
        edges = int(sum(deg[c] for c in checks))
        comps.append(Component(checks, variables, edges))
    comps.sort(key=lambda c: (c.variables, c.checks))
    return ComponentReport(tuple(comps))


def is_disjoint_Kmn(obj) -> ComponentReport:
    """Component decomposition; ``.all_complete`` says whether every part is K_{m,n}."""
    return components(obj)


def count_corollary(kind: str, **params) -> AbsorbingProfile:
    """Connected (a, 0) counts for identical-blocks or block-diagonal layouts.

    identical-blocks(m, n, ell): the multiplier is the component count read off
    the actual Tanner graph; both candidate formulas are kept in ``notes``.
    block-diagonal(ell, k): 2^(ell-k) C(2^k, a).
    """
    if kind == "block-diagonal":
        ell, k = params["ell"], params["k"]
        if not 0 <= k <= ell:
            raise ValueError("need 0 <= k <= ell")
        size = 1 << k
        counts = {(a, 0): (1 << (ell - k)) * comb(size, a) for a in _even_sizes(size)}
        return AbsorbingProfile(counts, True, f"block-diagonal ell={ell} k={k}")
    if kind == "identical-blocks":
        m, n, ell = params["m"], params["n"], params["ell"]
        shift = params.get("shift", 0)
        L = QuasiDyadicLayout.from_shifts(ell, [[shift] * n for _ in range(m)])
        rep = components(L)
        if not rep.all_complete or any(s != (m, n) for s in rep.shapes()):
            raise AssertionError("identical-blocks layout did not split into K_{m,n} parts")
        mult = len(rep.components)
        counts = {(a, 0): mult * comb(n, a) for a in _even_sizes(n)}
        notes = {
            "component_count": mult,
            "formula_components": {a: (1 << ell) * comb(n, a) for a in _even_sizes(n)},
            "formula_n_times": {a: n * comb(n, a) for a in _even_sizes(n)},
        }
        return AbsorbingProfile(counts, True, f"identical {m}x{n} blocks ell={ell}", notes)
    raise ValueError(f"unknown layout kind {kind!r}")


def is_absorbing(G: TannerGraph, A) -> tuple[bool, int]:
    """Majority-even test on the induced subgraph; returns (absorbing, odd check count)."""
    A = sorted(set(int(v) for v in A))
    if not A:
        raise ValueError("A must be nonempty")
    if A[0] < 0 or A[-1] >= G.n:
        raise IndexError("variable index out of range")
    var_adj = G.var_adj
    deg: dict[int, int] = {}
    for v in A:
        for c in var_adj[v]:
            deg[c] = deg.get(c, 0) + 1
    b = sum(1 for d in deg.values() if d % 2)
    ok = all(
        sum(1 for c in var_adj[v] if deg[c] % 2 == 0) > sum(1 for c in var_adj[v] if deg[c] % 2)
        for v in A
    )
    return ok, b


def profile_from_bruteforce(G: TannerGraph, a_max: int, connected_only: bool = True) -> AbsorbingProfile:
    found = absorbing_bruteforce(G, a_max, connected_only)
    return AbsorbingProfile(absorbing_profile(found), connected_only, "oracle")
