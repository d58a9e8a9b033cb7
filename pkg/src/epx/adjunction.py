"""Realization of filtered simplicial sets and the singular functor.

``realize`` puts a metric on the vertices of the stage at infinity: each
non-degenerate edge is weighted by the first critical value at which it
exists, and distances are shortest weighted paths (``inf`` across path
components). ``singular_at`` builds ``S_t(Y)``, whose ``n``-simplices are
all ``(n+1)``-tuples of points at pairwise distance ``<= t``; the
non-degenerate ones are the tuples with no two equal neighbours.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ep_metric import INF, EpMetricSpace, shortest_paths
from .sset import (
    Poset,
    SSetMap,
    TruncatedSSet,
    collapse_runs,
    identity,
    is_monotone_map,
    nondeg_poset,
    simplex,
)
from .systems import FilteredSSet, evaluate_at, from_stages, vertex_label, vr_stage


def _realize_stage(stage: TruncatedSSet, births: dict) -> EpMetricSpace:
    verts = list(stage.faces[0])
    pos = {v: i for i, v in enumerate(verts)}
    w = np.full((len(verts), len(verts)), INF)
    np.fill_diagonal(w, 0.0)
    if stage.cap >= 1:
        for key, fs in stage.faces[1].items():
            a, b = pos[fs[1][0]], pos[fs[0][0]]
            t = births[key]
            if t < w[a, b]:
                w[a, b] = w[b, a] = t
    return EpMetricSpace([vertex_label(v) for v in verts], shortest_paths(w))


def realize(F: FilteredSSet) -> EpMetricSpace:
    """Vertices of the stage at infinity with the shortest-path metric in
    which an edge costs its birth value."""
    return _realize_stage(F.final, F.births(1))


def partial_realize(F: FilteredSSet, s: float) -> EpMetricSpace:
    """Like ``realize`` but on the stage at ``s``, using only edges born by ``s``."""
    return _realize_stage(evaluate_at(F, s), F.births(1))


def realize_representable(s: float, K: TruncatedSSet) -> EpMetricSpace:
    """Closed form for the realization of ``L_s K``: ``s`` times the edge-count
    distance in the 1-skeleton of K, ``inf`` across components."""
    if not s > 0:
        raise ValueError("scale must be positive")
    verts = list(K.faces[0])
    pos = {v: i for i, v in enumerate(verts)}
    adj: list[set[int]] = [set() for _ in verts]
    if K.cap >= 1:
        for fs in K.faces[1].values():
            a, b = pos[fs[0][0]], pos[fs[1][0]]
            adj[a].add(b)
            adj[b].add(a)
    d = np.full((len(verts), len(verts)), INF)
    for src in range(len(verts)):
        hops = {src: 0}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in hops:
                    hops[v] = hops[u] + 1
                    queue.append(v)
        for v, h in hops.items():
            d[src, v] = s * h if h else 0.0
    return EpMetricSpace([vertex_label(v) for v in verts], d)


# ------------------------------------------------------------- singular side

def _singular_tuples(Y: EpMetricSpace, s: float, cap: int) -> list[list[tuple[int, ...]]]:
    close = Y.d <= s
    n = len(Y)
    levels = [[(i,) for i in range(n)]]
    for _ in range(cap):
        nxt = []
        for t in levels[-1]:
            ok = np.logical_and.reduce([close[i] for i in t])
            for j in np.flatnonzero(ok):
                if j != t[-1]:
                    nxt.append(t + (int(j),))
        levels.append(nxt)
    return levels


def singular_at(Y: EpMetricSpace, s: float, cap: int = 3) -> TruncatedSSet:
    """``S_s(Y)`` through ``cap``. Face ``d_i`` deletes coordinate ``i`` and
    collapses any repeat it creates into a degeneracy."""
    tables = []
    labels = Y.labels
    for level in _singular_tuples(Y, s, cap):
        table = {}
        for t in level:
            key = tuple(labels[i] for i in t)
            if len(key) == 1:
                table[key] = ()
            else:
                table[key] = tuple(collapse_runs(key[:i] + key[i + 1:]) for i in range(len(key)))
        tables.append(table)
    return TruncatedSSet(cap, tables)


def singular_system(Y: EpMetricSpace, cap: int = 3) -> FilteredSSet:
    vals = sorted(set(Y.d.ravel().tolist()) | {0.0})
    return from_stages(vals, (singular_at(Y, t, cap) for t in vals))


def is_singular_simplex(Y: EpMetricSpace, points: Sequence[str], s: float) -> bool:
    idx = [Y.index(p) for p in points]
    return bool(np.all(Y.d[np.ix_(idx, idx)] <= s))


def counit_vr(X: EpMetricSpace, t: float, cap: int = 3) -> SSetMap:
    """``η: V_t(X) -> S_t(X)``, an increasing tuple read as a list of points."""
    V = vr_stage(X, t, cap)
    S = singular_at(X, t, cap)
    return SSetMap(V, S, {(n, k): simplex(k, n) for n, k in V.elements()})


def distinct_list(tau: Sequence[str], X: EpMetricSpace) -> tuple[str, ...]:
    """Distinct points of a singular simplex, sorted in X's order."""
    return tuple(sorted(set(tau), key=X.index))


@dataclass
class PosetComparison:
    """The poset maps ``η_*: NV_t -> NS_t`` and ``L: NS_t -> NV_t``."""

    source: Poset
    target: Poset
    eta: dict
    back: dict

    def eta_is_monotone(self) -> bool:
        return is_monotone_map(self.eta, self.source, self.target)

    def back_is_monotone(self) -> bool:
        return is_monotone_map(self.back, self.target, self.source)

    def retracts(self) -> bool:
        """``L ∘ η_*`` is the identity."""
        return all(self.back[self.eta[e]] == e for e in self.source.elements)


def eta_poset(X: EpMetricSpace, t: float, cap: int = 3,
              V: TruncatedSSet | None = None, S: TruncatedSSet | None = None) -> PosetComparison:
    V = V if V is not None else vr_stage(X, t, cap)
    S = S if S is not None else singular_at(X, t, cap)
    NV, NS = nondeg_poset(V), nondeg_poset(S)
    eta = {e: e for e in NV.elements}
    back = {}
    for n, key in NS.elements:
        lst = distinct_list(key, X)
        back[(n, key)] = (len(lst) - 1, lst)
    return PosetComparison(NV, NS, eta, back)


def identity_pair(key, n: int):
    return (key, identity(n))
