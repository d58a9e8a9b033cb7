"""Extended pseudo-metric spaces and their finite colimits.

Distances live in ``[0, inf]`` and are stored as float64 with ``math.inf``
standing for the infinite distance. IEEE addition already saturates
(``inf + x == inf``) and ``inf`` is the maximum of the order, so no wrapper
type is needed.

Every colimit is built from a coproduct followed by a coequalizer, and the
coequalizer carries the quotient metric: the infimum over polygonal paths,
computed as an all-pairs shortest path in which points of the same fibre are
joined by zero-weight edges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

INF = math.inf


class EpMetricError(Exception):
    """Base class for errors raised by this module."""


class AxiomViolation(EpMetricError):
    """A distance matrix fails one of the ep-metric axioms.

    ``axiom`` is one of ``"shape"``, ``"nonnegative"``, ``"reflexive"``,
    ``"symmetric"`` or ``"triangle"``; ``witness`` holds the offending labels.
    """

    def __init__(self, axiom: str, witness: tuple = ()):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"{axiom} axiom fails at {self.witness}")


class UnknownPoint(EpMetricError, KeyError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown point {label!r}")


class NotSurjective(EpMetricError):
    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__(f"map misses target labels {self.missing}")


def parse_dist(value) -> float:
    """Read an extended distance; accepts numbers and the string ``"inf"``."""
    if isinstance(value, str):
        v = value.strip().lower()
        if v in ("inf", "+inf", "infinity", "∞"):
            return INF
        value = float(v)
    x = float(value)
    if math.isnan(x) or x < 0:
        raise ValueError(f"not an extended distance: {value!r}")
    return x


def format_dist(x: float, digits: int = 12):
    """JSON-friendly rendering: the string ``"inf"`` or a number rounded to
    ``digits`` significant digits."""
    if x == INF:
        return "inf"
    y = float(format(float(x), f".{digits}g"))
    return int(y) if y.is_integer() and abs(y) < 2**53 else y


class EpMetricSpace:
    """A finite ep-metric space: ordered labels plus a distance matrix.

    The label order doubles as the total order used by ordered constructions
    (Vietoris-Rips simplices are increasing in this order). Instances are
    immutable; the matrix is stored read-only.
    """

    __slots__ = ("labels", "d", "_index")

    def __init__(self, labels: Iterable[str], d):
        labels = tuple(str(x) for x in labels)
        arr = np.array(d, dtype=float, copy=True).reshape(len(labels), len(labels))
        arr.setflags(write=False)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise ValueError("point labels must be distinct")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "d", arr)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("EpMetricSpace is immutable")

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return label in self._index

    def __repr__(self) -> str:
        return f"EpMetricSpace(labels={list(self.labels)!r}, d={self.d.tolist()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, EpMetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.d, other.d)

    def __hash__(self) -> int:
        return hash((self.labels, self.d.tobytes()))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownPoint(label) from None

    def dist(self, a: str, b: str) -> float:
        return float(self.d[self.index(a), self.index(b)])

    def allclose(self, other: "EpMetricSpace", atol: float = 1e-9) -> bool:
        """Same labels, same infinite entries, finite entries within ``atol``."""
        if self.labels != other.labels:
            return False
        a, b = self.d, other.d
        if not np.array_equal(np.isinf(a), np.isinf(b)):
            return False
        fin = ~np.isinf(a)
        return bool(np.all(np.abs(a[fin] - b[fin]) <= atol))

    def distinct_distances(self) -> list[float]:
        """Sorted distinct entries of the matrix, ``0`` and ``inf`` included
        when they occur."""
        return sorted(set(self.d.ravel().tolist()))

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "matrix": [[format_dist(x) for x in row] for row in self.d.tolist()],
        }


def validate_ep_metric(labels: Sequence[str], matrix, atol: float = 0.0) -> EpMetricSpace:
    """Build a space after checking the three axioms.

    ``atol`` loosens the triangle inequality only; it exists for distances
    computed from coordinates, where collinear triples can miss by one ulp.
    """
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    try:
        d = np.array([[parse_dist(x) for x in row] for row in matrix], dtype=float)
    except ValueError as exc:
        raise AxiomViolation("nonnegative", (str(exc),)) from None
    if d.size == 0:
        d = d.reshape(0, 0)
    if d.shape != (n, n):
        raise AxiomViolation("shape", (f"{d.shape} for {n} labels",))
    for i in range(n):
        if d[i, i] != 0:
            raise AxiomViolation("reflexive", (labels[i],))
    asym = np.argwhere(d != d.T)
    if len(asym):
        i, j = asym[0]
        raise AxiomViolation("symmetric", (labels[i], labels[j]))
    if n:
        # bad[i, j, k]: d(i, k) > d(i, j) + d(j, k)
        with np.errstate(invalid="ignore"):
            bad = d[:, None, :] > d[:, :, None] + d[None, :, :] + atol
        hits = np.argwhere(bad)
        if len(hits):
            i, j, k = hits[0]
            raise AxiomViolation("triangle", (labels[i], labels[j], labels[k]))
    return EpMetricSpace(labels, d)


def euclidean_space(points, labels: Sequence[str] | None = None) -> EpMetricSpace:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if labels is None:
        labels = [str(i) for i in range(len(pts))]
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.sqrt((diff**2).sum(axis=-1))
    return validate_ep_metric(labels, d, atol=1e-9)


def standard_space(n: int, s: float) -> EpMetricSpace:
    """The space on ``0..n`` with every off-diagonal distance equal to ``s``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    s = parse_dist(s)
    d = np.full((n + 1, n + 1), s)
    np.fill_diagonal(d, 0.0)
    return EpMetricSpace([str(i) for i in range(n + 1)], d)


def induced_subspace(X: EpMetricSpace, subset: Iterable[str]) -> EpMetricSpace:
    """Restriction of ``X`` to ``subset``; points keep X's order."""
    wanted = set(subset)
    for lab in wanted:
        X.index(lab)
    idx = [i for i, lab in enumerate(X.labels) if lab in wanted]
    return EpMetricSpace([X.labels[i] for i in idx], X.d[np.ix_(idx, idx)])


@dataclass(frozen=True)
class EpMorphism:
    source: EpMetricSpace
    target: EpMetricSpace
    mapping: Mapping[str, str]

    def __post_init__(self):
        for lab in self.source.labels:
            if lab not in self.mapping:
                raise UnknownPoint(lab)
            if self.mapping[lab] not in self.target:
                raise UnknownPoint(self.mapping[lab])

    def __call__(self, label: str) -> str:
        return self.mapping[label]

    def is_nonexpanding(self) -> bool:
        return is_nonexpanding(self.mapping, self.source, self.target)

    def then(self, other: "EpMorphism") -> "EpMorphism":
        """Composite ``other ∘ self``."""
        return EpMorphism(self.source, other.target,
                          {a: other(b) for a, b in self.mapping.items()})


def is_nonexpanding(f: Mapping[str, str] | Callable[[str], str],
                    X: EpMetricSpace, Y: EpMetricSpace) -> bool:
    get = f.__getitem__ if isinstance(f, Mapping) else f
    img = []
    for lab in X.labels:
        try:
            y = get(lab)
        except KeyError:
            raise UnknownPoint(lab) from None
        img.append(Y.index(y))
    img = np.array(img, dtype=int)
    if not len(img):
        return True
    return bool(np.all(Y.d[np.ix_(img, img)] <= X.d))


def shortest_paths(w: np.ndarray) -> np.ndarray:
    """All-pairs shortest path lengths (Floyd-Warshall) on a weight matrix
    whose missing edges are ``inf``."""
    d = np.array(w, dtype=float, copy=True)
    for k in range(d.shape[0]):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


def quotient_metric(X: EpMetricSpace, p: Mapping[str, str],
                    target_labels: Sequence[str] | None = None) -> EpMetricSpace:
    """Quotient ep-metric along the surjection ``p`` from X's labels.

    Target points are ordered by ``target_labels`` when given, else by first
    appearance while scanning X in order.
    """
    for lab in X.labels:
        if lab not in p:
            raise UnknownPoint(lab)
    if target_labels is None:
        target_labels = list(dict.fromkeys(p[lab] for lab in X.labels))
    else:
        target_labels = list(target_labels)
        missing = set(target_labels) - {p[lab] for lab in X.labels}
        if missing:
            raise NotSurjective(sorted(missing))
    tpos = {t: i for i, t in enumerate(target_labels)}
    fibre = np.array([tpos[p[lab]] for lab in X.labels], dtype=int)
    w = np.array(X.d, dtype=float, copy=True)
    w[fibre[:, None] == fibre[None, :]] = 0.0
    sp = shortest_paths(w)
    reps = np.array([int(np.flatnonzero(fibre == t)[0]) for t in range(len(target_labels))],
                    dtype=int)
    return EpMetricSpace(target_labels, sp[np.ix_(reps, reps)])


def _class_label(members: Iterable[str]) -> str:
    members = sorted(members)
    return members[0] if len(members) == 1 else "+".join(members)


def _classes(labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> dict[str, str]:
    """Label -> canonical class label for the equivalence generated by pairs."""
    parent = {lab: lab for lab in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    members: dict[str, list[str]] = {}
    for lab in labels:
        members.setdefault(find(lab), []).append(lab)
    names = {root: _class_label(ms) for root, ms in members.items()}
    return {lab: names[find(lab)] for lab in labels}


def coproduct(spaces: Sequence[EpMetricSpace],
              tags: Sequence[str] | None = None) -> tuple[EpMetricSpace, list[EpMorphism]]:
    """Disjoint union; points of summand ``i`` are relabelled ``"{tag}:{label}"``
    and distances across summands are infinite."""
    spaces = list(spaces)
    if tags is None:
        tags = [str(i) for i in range(len(spaces))]
    labels: list[str] = []
    n = sum(len(X) for X in spaces)
    d = np.full((n, n), INF)
    off = 0
    for tag, X in zip(tags, spaces):
        m = len(X)
        d[off:off + m, off:off + m] = X.d
        labels.extend(f"{tag}:{lab}" for lab in X.labels)
        off += m
    C = EpMetricSpace(labels, d)
    injections = [
        EpMorphism(X, C, {lab: f"{tag}:{lab}" for lab in X.labels})
        for tag, X in zip(tags, spaces)
    ]
    return C, injections


def coequalizer(f: EpMorphism, g: EpMorphism) -> tuple[EpMetricSpace, EpMorphism]:
    """Set-level coequalizer of ``f, g: A ⇉ X`` with the quotient metric."""
    if f.source.labels != g.source.labels or f.target.labels != g.target.labels:
        raise ValueError("coequalizer needs parallel morphisms")
    X = f.target
    p = _classes(X.labels, ((f(a), g(a)) for a in f.source.labels))
    C = quotient_metric(X, p)
    return C, EpMorphism(X, C, p)


def colimit(spaces: Sequence[EpMetricSpace],
            arrows: Sequence[tuple[int, int, Mapping[str, str]]]
            ) -> tuple[EpMetricSpace, list[EpMorphism]]:
    """Colimit of a finite diagram.

    ``arrows`` lists ``(i, j, f)`` with ``f`` a non-expanding map from
    ``spaces[i]`` to ``spaces[j]``. The colimit is the coequalizer of the two
    maps from the coproduct of arrow sources into the coproduct of objects
    (identity on the source object, ``f`` into the target object).
    """
    spaces = list(spaces)
    total, inj = coproduct(spaces)
    srcs = [spaces[i] for i, _, _ in arrows]
    A, _ = coproduct(srcs, tags=[f"a{k}" for k in range(len(arrows))])
    fmap, gmap = {}, {}
    for k, (i, j, f) in enumerate(arrows):
        for lab in spaces[i].labels:
            fmap[f"a{k}:{lab}"] = inj[i](lab)
            gmap[f"a{k}:{lab}"] = inj[j](f[lab])
    C, proj = coequalizer(EpMorphism(A, total, fmap), EpMorphism(A, total, gmap))
    legs = [e.then(proj) for e in inj]
    return C, legs


def pushout(f: EpMorphism, g: EpMorphism) -> tuple[EpMetricSpace, list[EpMorphism]]:
    """Pushout of ``X <-f- A -g-> Y``; legs are the maps from X and Y."""
    if f.source.labels != g.source.labels:
        raise ValueError("pushout needs a common source")
    A = f.source
    C, legs = colimit([A, f.target, g.target], [(0, 1, f.mapping), (0, 2, g.mapping)])
    return C, legs[1:]


def subspace_pushout(Z: EpMetricSpace, X: Iterable[str], Y: Iterable[str]) -> EpMetricSpace:
    """Pushout of the subspaces ``X <- X∩Y -> Y`` of ``Z``, on the labels of
    ``X ∪ Y`` (in Z's order). Distances are minima over paths whose steps stay
    inside X or inside Y."""
    xs, ys = set(X), set(Y)
    SX, SY = induced_subspace(Z, xs), induced_subspace(Z, ys)
    I = induced_subspace(Z, xs & ys)
    ident = {lab: lab for lab in I.labels}
    C, legs = pushout(EpMorphism(I, SX, ident), EpMorphism(I, SY, ident))
    union = [lab for lab in Z.labels if lab in xs or lab in ys]
    order = [C.index(legs[0](lab)) if lab in xs else C.index(legs[1](lab)) for lab in union]
    return EpMetricSpace(union, C.d[np.ix_(order, order)])


def metric_identification(X: EpMetricSpace) -> tuple[EpMetricSpace, EpMorphism]:
    """Quotient by ``x ~ y iff d(x, y) = 0``."""
    zero = np.argwhere(X.d == 0)
    p = _classes(X.labels, ((X.labels[i], X.labels[j]) for i, j in zero if i < j))
    Y = quotient_metric(X, p)
    return Y, EpMorphism(X, Y, p)
