"""Exhaustive reference computations.

Each function here recomputes something the main modules compute cleverly,
by enumerating the objects a definition quantifies over. They are slow and
only meant for small inputs (a handful of points, dimension <= 3).
"""
from __future__ import annotations

import itertools
import math
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from .ep_metric import INF, EpMetricSpace, standard_space
from .sset import TruncatedSSet, surjections

# ----------------------------------------------------------- quotient metrics


def polygonal_quotient(X: EpMetricSpace, p: Mapping[str, str]) -> dict[tuple[str, str], float]:
    """Minimum of ``sum d(x_i, y_i)`` over chains of links whose consecutive
    ends lie in the same fibre of ``p``.

    A chain visiting a fibre twice can be shortened, so it suffices to try
    every sequence of pairwise distinct fibres; each link then independently
    takes its cheapest pair of representatives.
    """
    fibres: dict[str, list[int]] = {}
    for i, lab in enumerate(X.labels):
        fibres.setdefault(p[lab], []).append(i)
    names = list(fibres)
    link = {}
    for a in names:
        for b in names:
            link[a, b] = min(X.d[i, j] for i in fibres[a] for j in fibres[b])
    out = {}
    for u in names:
        for v in names:
            if u == v:
                out[u, v] = 0.0
                continue
            best = INF
            middle = [w for w in names if w not in (u, v)]
            for r in range(len(middle) + 1):
                for seq in itertools.permutations(middle, r):
                    walk = (u, *seq, v)
                    total = sum(link[a, b] for a, b in zip(walk, walk[1:]))
                    best = min(best, total)
            out[u, v] = best
    return out


def alternating_distance(Z: EpMetricSpace, X: Sequence[str], Y: Sequence[str]) -> dict[tuple[str, str], float]:
    """Minimum over simple paths in ``X ∪ Y`` whose every step stays inside X
    or inside Y, of the summed ambient distances."""
    xs, ys = set(X), set(Y)
    pts = [lab for lab in Z.labels if lab in xs or lab in ys]

    def step(a, b):
        if (a in xs and b in xs) or (a in ys and b in ys):
            return Z.dist(a, b)
        return INF

    out = {}
    for a in pts:
        for b in pts:
            if a == b:
                out[a, b] = 0.0
                continue
            best = INF
            middle = [c for c in pts if c not in (a, b)]
            for r in range(len(middle) + 1):
                for seq in itertools.permutations(middle, r):
                    walk = (a, *seq, b)
                    best = min(best, sum(step(u, v) for u, v in zip(walk, walk[1:])))
            out[a, b] = best
    return out


def as_matrix(labels: Sequence[str], table: Mapping[tuple[str, str], float]) -> np.ndarray:
    return np.array([[table[a, b] for b in labels] for a in labels], dtype=float)


# -------------------------------------------------------------- realization

def stage_path_realization(values: Sequence[float], stages: Sequence[TruncatedSSet],
                           upto: float = INF) -> tuple[list, np.ndarray]:
    """Realized distances straight from the stages: a link between ``u`` and
    ``v`` costs the least ``s`` at which some stage contains an edge between
    them; distances minimise over simple vertex paths."""
    active = [(t, st) for t, st in zip(values, stages) if t <= upto]
    if not active:
        return [], np.zeros((0, 0))
    verts = list(active[-1][1].faces[0])
    cost: dict = {}
    for t, st in active:
        if st.cap < 1:
            continue
        for fs in st.faces[1].values():
            u, v = fs[1][0], fs[0][0]
            for e in ((u, v), (v, u)):
                cost[e] = min(cost.get(e, INF), t)
    n = len(verts)
    d = np.full((n, n), INF)
    for i, a in enumerate(verts):
        for j, b in enumerate(verts):
            if i == j:
                d[i, j] = 0.0
                continue
            middle = [c for c in verts if c not in (a, b)]
            for r in range(len(middle) + 1):
                for seq in itertools.permutations(middle, r):
                    walk = (a, *seq, b)
                    total = sum(cost.get(e, INF) for e in zip(walk, walk[1:]))
                    d[i, j] = min(d[i, j], total)
    return verts, d


# ---------------------------------------------------------- degeneracies

Member = Callable[[tuple], bool]


def pull_back(s: Sequence[int], y: Sequence) -> tuple:
    """``s^* y`` for a tuple model: ``(y[s(0)], ..., y[s(n)])``."""
    return tuple(y[i] for i in s)


def is_nondegenerate_model(y: tuple, member: Member) -> bool:
    """``y`` is not ``s^* z`` for any proper surjection ``s`` and simplex ``z``."""
    n = len(y) - 1
    for k in range(n):
        for s in surjections(n, k):
            z = [None] * (k + 1)
            ok = True
            for pos, i in enumerate(s):
                if z[i] is None:
                    z[i] = y[pos]
                elif z[i] != y[pos]:
                    ok = False
                    break
            if ok and member(tuple(z)):
                return False
    return True


def ez_decompositions(x: tuple, member: Member) -> list[tuple[tuple[int, ...], tuple]]:
    """All pairs ``(s, y)`` with ``s`` a surjection, ``y`` non-degenerate and
    ``s^* y = x``. Since ``s`` is onto, ``y`` is forced by ``s`` and ``x``."""
    n = len(x) - 1
    found = []
    for k in range(n + 1):
        for s in surjections(n, k):
            y: list = [None] * (k + 1)
            ok = True
            for pos, i in enumerate(s):
                if y[i] is None:
                    y[i] = x[pos]
                elif y[i] != x[pos]:
                    ok = False
                    break
            if not ok:
                continue
            y_t = tuple(y)
            if member(y_t) and is_nondegenerate_model(y_t, member) and pull_back(s, y_t) == x:
                found.append((s, y_t))
    return found


def model_simplices(vertices: Sequence[Hashable], n: int, member: Member) -> list[tuple]:
    return [t for t in itertools.product(vertices, repeat=n + 1) if member(t)]


# ------------------------------------------------------------------ adjunction

def count_morphisms_from_standard(Y: EpMetricSpace, n: int, s: float) -> int:
    """Number of non-expanding maps ``U^n_s -> Y`` by listing every function."""
    U = standard_space(n, s)
    count = 0
    for img in itertools.product(range(len(Y)), repeat=n + 1):
        if all(Y.d[img[i], img[j]] <= U.d[i, j] for i in range(n + 1) for j in range(n + 1)):
            count += 1
    return count


def count_simplices(Z: TruncatedSSet, n: int) -> int:
    """All ``n``-simplices, degenerate ones included, from the stored
    non-degenerate ones: each ``k``-simplex has ``C(n, k)`` degeneracies."""
    return sum(len(Z.faces[k]) * math.comb(n, k) for k in range(min(n, Z.cap) + 1))


# ----------------------------------------------------------------- graphs

def bfs_components(vertices: Sequence, edges: Sequence[tuple]) -> list[set]:
    adj: dict = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen: set = set()
    comps = []
    for v in vertices:
        if v in seen:
            continue
        comp, stack = set(), [v]
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(adj[u] - comp)
        seen |= comp
        comps.append(comp)
    return comps
