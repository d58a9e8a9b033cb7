"""Filtered simplicial sets: diagrams ``[0, inf] -> sSet`` with finitely
many critical values.

A diagram is stored as its distinct stages at increasing critical values.
Stages are nested and share keys, so every structure map is the
key-preserving inclusion; evaluation at ``s`` returns the stage of the
largest critical value ``<= s`` (empty below the first one).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ep_metric import INF, EpMetricSpace, format_dist
from .sset import (
    Poset,
    SSetMap,
    TruncatedSSet,
    _deletion_table,
    inclusion,
    nerve_of_poset,
    path_components,
)


class BadDegree(ValueError):
    pass


def vertex_label(key) -> str:
    """Point label carried by a vertex key (``("a",) -> "a"``)."""
    if isinstance(key, tuple) and len(key) == 1:
        return str(key[0])
    return str(key)


@dataclass(frozen=True)
class FilteredSSet:
    values: tuple[float, ...]
    stages: tuple[TruncatedSSet, ...]

    def __post_init__(self):
        if len(self.values) != len(self.stages):
            raise ValueError("one stage per critical value")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("critical values must increase strictly")
        if any(v < 0 for v in self.values):
            raise ValueError("critical values lie in [0, inf]")
        caps = {st.cap for st in self.stages}
        if len(caps) > 1:
            raise ValueError("stages must share a cap")
        for a, b in zip(self.stages, self.stages[1:]):
            if not a.is_subcomplex_of(b):
                raise ValueError("stages must be nested")

    @property
    def cap(self) -> int:
        return self.stages[0].cap if self.stages else 0

    def __len__(self) -> int:
        return len(self.values)

    def at(self, s: float) -> TruncatedSSet:
        return evaluate_at(self, s)

    @property
    def final(self) -> TruncatedSSet:
        return self.stages[-1] if self.stages else TruncatedSSet(0)

    def structure_map(self, i: int) -> SSetMap:
        """Inclusion of stage ``i`` into stage ``i + 1``."""
        return inclusion(self.stages[i], self.stages[i + 1])

    def births(self, n: int) -> dict:
        """Least critical value at which each stored ``n``-simplex appears."""
        out: dict = {}
        for t, st in zip(self.values, self.stages):
            if n <= st.cap:
                for key in st.faces[n]:
                    out.setdefault(key, t)
        return out

    def summary_rows(self) -> list[list]:
        return [[format_dist(t), *st.counts()] for t, st in zip(self.values, self.stages)]


def from_stages(values: Iterable[float], stages: Iterable[TruncatedSSet]) -> FilteredSSet:
    """Drop empty leading stages and stages equal to their predecessor."""
    vs, sts = [], []
    for t, st in zip(values, stages):
        if st.is_empty() and not sts:
            continue
        if sts and st == sts[-1]:
            continue
        vs.append(float(t))
        sts.append(st)
    return FilteredSSet(tuple(vs), tuple(sts))


def evaluate_at(F: FilteredSSet, s: float) -> TruncatedSSet:
    idx = None
    for i, t in enumerate(F.values):
        if t <= s:
            idx = i
    if idx is None:
        return TruncatedSSet(F.cap)
    return F.stages[idx]


def represent(s: float, K: TruncatedSSet) -> FilteredSSet:
    """The diagram that is empty below ``s`` and ``K`` from ``s`` on."""
    return FilteredSSet((float(s),), (K,))


def _diameter_table(X: EpMetricSpace, cap: int) -> dict[tuple[int, ...], float]:
    out = {}
    d = X.d
    for r in range(1, min(len(X), cap + 1) + 1):
        for c in itertools.combinations(range(len(X)), r):
            out[c] = max((d[i, j] for i, j in itertools.combinations(c, 2)), default=0.0)
    return out


def critical_values(X: EpMetricSpace) -> list[float]:
    """Distinct distances of ``X``; ``0`` always (vertices), ``inf`` if present."""
    vals = set(X.d.ravel().tolist()) | {0.0}
    return sorted(vals)


def _subcomplex_stage(X: EpMetricSpace, diam: dict, t: float, cap: int,
                      allowed: set[int] | None = None) -> TruncatedSSet:
    tables: list[list[tuple]] = [[] for _ in range(cap + 1)]
    for c, dm in diam.items():
        if dm <= t and (allowed is None or allowed.issuperset(c)):
            tables[len(c) - 1].append(tuple(X.labels[i] for i in c))
    return TruncatedSSet(cap, [_deletion_table(sorted(tb, key=lambda k: [X.index(v) for v in k]))
                               for tb in tables])


def vr_stage(X: EpMetricSpace, t: float, cap: int) -> TruncatedSSet:
    """``V_t(X)``: increasing tuples (in X's label order) of diameter ``<= t``."""
    return _subcomplex_stage(X, _diameter_table(X, cap), t, cap)


def vr_system(X: EpMetricSpace, cap: int = 3) -> FilteredSSet:
    diam = _diameter_table(X, cap)
    vals = critical_values(X)
    return from_stages(vals, (_subcomplex_stage(X, diam, t, cap) for t in vals))


def degree_rips_system(X: EpMetricSpace, k: int, cap: int = 3) -> FilteredSSet:
    """Stage ``t`` is the full subcomplex of ``V_t(X)`` on the points having at
    least ``k`` points (themselves included) within distance ``t``."""
    if not 1 <= k <= len(X):
        raise BadDegree(f"degree {k} outside 1..{len(X)}")
    diam = _diameter_table(X, cap)
    vals = critical_values(X)
    stages = []
    for t in vals:
        allowed = {i for i in range(len(X)) if int((X.d[i] <= t).sum()) >= k}
        stages.append(_subcomplex_stage(X, diam, t, cap, allowed))
    return from_stages(vals, stages)


def one_skeleton(F: FilteredSSet) -> FilteredSSet:
    return FilteredSSet(F.values, tuple(st.skeleton(1) for st in F.stages))


def subset_poset_system(X: EpMetricSpace, s: float, cap: int = 3) -> tuple[Poset, TruncatedSSet]:
    """``P_s(X)``: non-empty subsets of diameter ``<= s`` under inclusion,
    restricted to subsets of at most ``cap + 1`` points, and its nerve."""
    diam = _diameter_table(X, cap)
    elems = [tuple(X.labels[i] for i in c) for c, dm in diam.items() if dm <= s]
    elems.sort(key=lambda e: (len(e), [X.index(v) for v in e]))
    present = set(elems)
    down = {}
    for e in elems:
        down[e] = [f for r in range(1, len(e) + 1) for f in itertools.combinations(e, r)
                   if f in present]
    P = Poset(elems, down)
    return P, nerve_of_poset(P, cap)


# ----------------------------------------------------------------- barcodes

@dataclass(frozen=True)
class Bar:
    birth: float
    death: float
    representative: str
    essential: bool = False  # never merged, even at infinity

    def alive_at(self, s: float) -> bool:
        if s == INF:
            return self.essential
        return self.birth <= s < self.death

    def to_json(self) -> dict:
        return {"birth": format_dist(self.birth), "death": format_dist(self.death),
                "representative": self.representative}


def pi0_barcode(F: FilteredSSet) -> list[Bar]:
    """Persistence of path components.

    When two components merge, the older one (earlier birth) survives; on a
    tie the one with the lexicographically least representative label does.
    Bars of zero length are dropped.
    """
    parent: dict = {}
    info: dict = {}  # root -> (birth, label)
    bars: list[Bar] = []

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, st in zip(F.values, F.stages):
        for v in st.faces[0]:
            if v not in parent:
                parent[v] = v
                info[v] = (t, vertex_label(v))
        if st.cap < 1:
            continue
        for fs in st.faces[1].values():
            a, b = find(fs[0][0]), find(fs[1][0])
            if a == b:
                continue
            if info[b] < info[a]:
                a, b = b, a
            parent[b] = a
            birth, label = info.pop(b)
            if birth < t:
                bars.append(Bar(birth, t, label))
    for root, (birth, label) in info.items():
        bars.append(Bar(birth, INF, label, essential=True))
    bars.sort(key=lambda b: (b.birth, b.representative, b.death))
    return bars


def bar_count(bars: Sequence[Bar], s: float) -> int:
    return sum(b.alive_at(s) for b in bars)


def component_counts(F: FilteredSSet) -> list[int]:
    return [len(path_components(st)) for st in F.stages]
