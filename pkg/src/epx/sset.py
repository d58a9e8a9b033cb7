"""Truncated simplicial sets stored in Eilenberg-Zilber normal form.

Only non-degenerate simplices are stored. Every simplex, degenerate or not,
is written as a pair ``(key, s)`` where ``key`` names a non-degenerate
simplex ``x`` and ``s`` is a surjective ordinal map with ``simplex = s*(x)``.
The dimension of ``x`` is ``s[-1]``; the dimension of the simplex is
``len(s) - 1``.

An ordinal map ``[m] -> [n]`` is a weakly increasing tuple of length
``m + 1`` with values in ``0..n``. A stored face ``d_i`` of an ``n``-simplex
is an EZ pair whose surjection has length ``n``.

Only dimensions ``0..cap`` are represented. Every statement computed here is
a statement about the ``cap``-skeleton.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

Key = Hashable
EZ = tuple  # (key, surjection)
Element = tuple  # (dim, key)


class SSetError(Exception):
    pass


class DimensionMismatch(SSetError):
    pass


class UnknownSimplex(SSetError, KeyError):
    pass


class UnknownVertex(SSetError, KeyError):
    pass


class CapExceeded(SSetError):
    pass


class IdentityViolation(SSetError):
    """A face table breaks a simplicial identity or EZ normal form."""

    def __init__(self, message: str, witness: tuple = ()):
        self.witness = witness
        super().__init__(f"{message}: {witness!r}")


# ---------------------------------------------------------------- ordinal maps

def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def coface(i: int, n: int) -> tuple[int, ...]:
    """``δ_i: [n-1] -> [n]``, the injection missing ``i``."""
    return tuple(j if j < i else j + 1 for j in range(n))


def codegeneracy(j: int, n: int) -> tuple[int, ...]:
    """``σ_j: [n+1] -> [n]``, the surjection hitting ``j`` twice."""
    return tuple(i if i <= j else i - 1 for i in range(n + 2))


def compose(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """``f ∘ g`` (apply ``g`` first)."""
    return tuple(f[v] for v in g)


def is_monotone(theta: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(theta, theta[1:]))


def is_surjection(s: Sequence[int]) -> bool:
    return len(s) > 0 and s[0] == 0 and is_monotone(s) and all(b - a <= 1 for a, b in zip(s, s[1:]))


def epi_mono(theta: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Factor ``theta = mono ∘ epi`` with ``epi`` surjective and ``mono``
    injective, both monotone."""
    image = sorted(set(theta))
    pos = {v: i for i, v in enumerate(image)}
    return tuple(pos[v] for v in theta), tuple(image)


def monotone_maps(m: int, n: int) -> Iterator[tuple[int, ...]]:
    return itertools.combinations_with_replacement(range(n + 1), m + 1)


def surjections(m: int, k: int) -> Iterator[tuple[int, ...]]:
    for theta in monotone_maps(m, k):
        if is_surjection(theta) and theta[-1] == k:
            yield theta


def injections(m: int, n: int) -> Iterator[tuple[int, ...]]:
    return itertools.combinations(range(n + 1), m + 1)


def collapse_runs(seq: Sequence) -> tuple[tuple, tuple[int, ...]]:
    """Split a sequence into its run values and the surjection onto them:
    ``(a, a, b, a) -> ((a, b, a), (0, 0, 1, 2))``."""
    vals: list = []
    surj: list[int] = []
    for x in seq:
        if not vals or vals[-1] != x:
            vals.append(x)
        surj.append(len(vals) - 1)
    return tuple(vals), tuple(surj)


# --------------------------------------------------------------- the container

class TruncatedSSet:
    """Non-degenerate simplices through dimension ``cap`` with face tables.

    ``faces[n][key]`` is the tuple ``(d_0, ..., d_n)`` of EZ pairs for an
    ``n``-simplex, and ``()`` for a vertex.
    """

    __slots__ = ("cap", "faces")

    def __init__(self, cap: int, faces: Sequence[Mapping[Key, Sequence[EZ]]] = ()):
        if cap < 0:
            raise ValueError("cap must be non-negative")
        tables = [dict(t) for t in faces]
        if len(tables) > cap + 1:
            if any(tables[cap + 1:]):
                raise CapExceeded(f"simplices above cap {cap}")
            tables = tables[:cap + 1]
        tables += [{} for _ in range(cap + 1 - len(tables))]
        self.cap = cap
        self.faces = tuple(
            {k: tuple((fk, tuple(s)) for fk, s in v) for k, v in t.items()} for t in tables
        )

    def __repr__(self) -> str:
        return f"TruncatedSSet(cap={self.cap}, counts={self.counts()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSSet):
            return NotImplemented
        return self.cap == other.cap and self.faces == other.faces

    def counts(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.faces)

    def simplices(self, n: int) -> list[Key]:
        if n > self.cap:
            raise CapExceeded(f"dimension {n} above cap {self.cap}")
        return list(self.faces[n]) if n >= 0 else []

    def elements(self) -> list[Element]:
        return [(n, k) for n, t in enumerate(self.faces) for k in t]

    def has(self, n: int, key: Key) -> bool:
        return 0 <= n <= self.cap and key in self.faces[n]

    def face(self, n: int, key: Key, i: int) -> EZ:
        try:
            return self.faces[n][key][i]
        except KeyError:
            raise UnknownSimplex((n, key)) from None

    def vertices(self) -> list[Key]:
        return list(self.faces[0])

    def is_empty(self) -> bool:
        return not self.faces[0]

    def skeleton(self, k: int) -> "TruncatedSSet":
        return TruncatedSSet(min(k, self.cap), self.faces[:k + 1])

    def with_cap(self, cap: int) -> "TruncatedSSet":
        """Same simplices under a larger cap, or the ``cap``-skeleton."""
        return TruncatedSSet(cap, self.faces[:cap + 1])

    def restrict(self, elements: Iterable[Element]) -> "TruncatedSSet":
        """Subcomplex on the given non-degenerate simplices (must be closed
        under faces)."""
        keep = set(elements)
        tables = [{k: v for k, v in t.items() if (n, k) in keep} for n, t in enumerate(self.faces)]
        return TruncatedSSet(self.cap, tables)

    def is_subcomplex_of(self, other: "TruncatedSSet") -> bool:
        for n, t in enumerate(self.faces):
            for k, v in t.items():
                if not other.has(n, k) or other.faces[n][k] != v:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "cap": self.cap,
            "simplices": [
                [{"key": _jsonable(k), "faces": [[_jsonable(fk), list(s)] for fk, s in v]}
                 for k, v in t.items()]
                for t in self.faces
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSSet":
        tables = []
        for dim in data["simplices"]:
            tables.append({
                _tupled(e["key"]): tuple((_tupled(fk), tuple(s)) for fk, s in e["faces"])
                for e in dim
            })
        return cls(int(data["cap"]), tables)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "TruncatedSSet":
        return cls.from_json(json.loads(text))


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def _tupled(x):
    if isinstance(x, list):
        return tuple(_tupled(v) for v in x)
    return x


def ez_dim(pair: EZ) -> int:
    """Dimension of the simplex ``s*(x)`` named by the pair."""
    return len(pair[1]) - 1


def nondeg(pair: EZ) -> Element:
    """The non-degenerate part of an EZ pair, as ``(dim, key)``."""
    return (pair[1][-1], pair[0])


def is_nondegenerate(pair: EZ) -> bool:
    return pair[1][-1] == len(pair[1]) - 1


# -------------------------------------------------------------- operator action

def _normalize(Z: TruncatedSSet, key: Key, k: int, phi: tuple[int, ...]) -> EZ:
    # phi: [m] -> [k] monotone; returns the EZ form of phi*(x) for the stored x
    while True:
        hit = set(phi)
        if len(hit) == k + 1:
            return (key, phi)
        i = next(j for j in range(k + 1) if j not in hit)
        # phi = δ_i ∘ phi', then d_i x = s'*(y)
        y, s = Z.face(k, key, i)
        phi = tuple(s[v if v < i else v - 1] for v in phi)
        key, k = y, s[-1]


def apply_ordinal(Z: TruncatedSSet, sigma: EZ, theta: Sequence[int]) -> EZ:
    """``θ*(σ)`` in EZ normal form, for ``θ: [m] -> [n]`` and an ``n``-simplex σ."""
    key, s = sigma
    n = len(s) - 1
    theta = tuple(theta)
    if not theta or not is_monotone(theta) or theta[0] < 0 or theta[-1] > n:
        raise DimensionMismatch(f"{theta} is not an ordinal map into [{n}]")
    k = s[-1]
    if not Z.has(k, key):
        raise UnknownSimplex((k, key))
    return _normalize(Z, key, k, compose(s, theta))


def face_of(Z: TruncatedSSet, sigma: EZ, i: int) -> EZ:
    n = ez_dim(sigma)
    return apply_ordinal(Z, sigma, coface(i, n))


def degeneracy_of(sigma: EZ, j: int) -> EZ:
    key, s = sigma
    n = len(s) - 1
    if not 0 <= j <= n:
        raise DimensionMismatch(f"s_{j} on a {n}-simplex")
    return (key, compose(s, codegeneracy(j, n)))


def simplex(key: Key, n: int) -> EZ:
    """EZ pair of a stored non-degenerate ``n``-simplex."""
    return (key, identity(n))


# ------------------------------------------------------------------ validation

def sset_violations(Z: TruncatedSSet, limit: int | None = 1) -> list[IdentityViolation]:
    """Broken EZ normal forms and simplicial identities, up to ``limit``."""
    out: list[IdentityViolation] = []

    def report(msg, witness):
        out.append(IdentityViolation(msg, witness))
        return limit is not None and len(out) >= limit

    for n, table in enumerate(Z.faces):
        for key, fs in table.items():
            if len(fs) != (n + 1 if n else 0):
                if report("wrong number of faces", (n, key)):
                    return out
                continue
            for i, (fk, s) in enumerate(fs):
                if len(s) != n or not is_surjection(s) or not Z.has(s[-1], fk):
                    if report("face not in EZ normal form", (n, key, i)):
                        return out
            if n < 2 or any(len(s) != n or not is_surjection(s) or not Z.has(s[-1], fk)
                            for fk, s in fs):
                continue
            for j in range(1, n + 1):
                for i in range(j):
                    try:
                        lhs = apply_ordinal(Z, fs[j], coface(i, n - 1))
                        rhs = apply_ordinal(Z, fs[i], coface(j - 1, n - 1))
                    except SSetError:
                        lhs, rhs = None, ()
                    if lhs != rhs:
                        if report(f"d_{i} d_{j} != d_{j - 1} d_{i}", (n, key, lhs, rhs)):
                            return out
    return out


def validate_sset(Z: TruncatedSSet, strict: bool = False) -> bool:
    """True iff face tables are in EZ normal form and satisfy
    ``d_i d_j = d_{j-1} d_i`` for ``i < j``. With ``strict`` the first
    violation is raised instead."""
    bad = sset_violations(Z, limit=1)
    if bad and strict:
        raise bad[0]
    return not bad


# -------------------------------------------------------------- constructions

def _deletion_table(simplices: Iterable[tuple]) -> dict[Key, tuple[EZ, ...]]:
    table = {}
    for t in simplices:
        n = len(t) - 1
        table[t] = tuple((t[:i] + t[i + 1:], identity(n - 1)) for i in range(n + 1)) if n else ()
    return table


def from_ordered_complex(vertices: Sequence, facets: Iterable[Iterable], cap: int) -> TruncatedSSet:
    """Ordered simplicial complex as a simplicial set: non-degenerate
    ``n``-simplices are increasing tuples inside some facet."""
    order = {v: i for i, v in enumerate(vertices)}
    found: set[tuple] = set()
    for facet in facets:
        f = set(facet)
        if not f:
            raise ValueError("facets must be non-empty")
        for v in f:
            if v not in order:
                raise UnknownVertex(v)
        f = sorted(f, key=order.__getitem__)
        for r in range(1, min(len(f), cap + 1) + 1):
            found.update(itertools.combinations(f, r))
    tables = [[] for _ in range(cap + 1)]
    for t in sorted(found, key=lambda t: [order[v] for v in t]):
        tables[len(t) - 1].append(t)
    return TruncatedSSet(cap, [_deletion_table(t) for t in tables])


def standard_simplex(n: int, cap: int | None = None) -> TruncatedSSet:
    return from_ordered_complex(list(range(n + 1)), [range(n + 1)], n if cap is None else cap)


def boundary_simplex(n: int, cap: int | None = None) -> TruncatedSSet:
    facets = [[v for v in range(n + 1) if v != i] for i in range(n + 1)]
    return from_ordered_complex(list(range(n + 1)), facets, n if cap is None else cap)


# ---------------------------------------------------------------------- posets

class Poset:
    """Finite poset given by the down-set ``{x : x <= e}`` of every element."""

    __slots__ = ("elements", "down", "_pos")

    def __init__(self, elements: Iterable, down: Mapping):
        self.elements = tuple(elements)
        self.down = {e: frozenset(down[e]) for e in self.elements}
        self._pos = {e: i for i, e in enumerate(self.elements)}

    @classmethod
    def from_leq(cls, elements: Iterable, leq) -> "Poset":
        els = list(elements)
        return cls(els, {b: [a for a in els if leq(a, b)] for b in els})

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e) -> bool:
        return e in self.down

    def leq(self, a, b) -> bool:
        return a in self.down[b]

    def less(self, a, b) -> bool:
        return a != b and a in self.down[b]

    def check_axioms(self) -> bool:
        for a in self.elements:
            if a not in self.down[a]:
                return False
            for b in self.down[a]:
                if b not in self.down:
                    return False
                if b != a and a in self.down[b]:
                    return False
                if not self.down[b] <= self.down[a]:
                    return False
        return True

    def chains(self, length: int) -> list[tuple]:
        """Strictly increasing chains with ``length`` elements, in a
        deterministic order."""
        pos = self._pos
        strict_below = {e: sorted(self.down[e] - {e}, key=pos.__getitem__) for e in self.elements}
        by_top = {e: [(e,)] for e in self.elements}
        for _ in range(length - 1):
            by_top = {e: [c + (e,) for x in strict_below[e] for c in by_top[x]]
                      for e in self.elements}
        return [c for e in self.elements for c in by_top[e]]


def is_monotone_map(f: Mapping, P: Poset, Q: Poset) -> bool:
    return all(Q.leq(f[a], f[b]) for b in P.elements for a in P.down[b])


def nondeg_poset(Z: TruncatedSSet) -> Poset:
    """Non-degenerate simplices ordered by ``σ <= τ`` iff σ is the
    non-degenerate part of some ``θ*(τ)``, computed as reachability through
    non-degenerate parts of faces."""
    down: dict[Element, frozenset] = {}
    for n, table in enumerate(Z.faces):
        for key, fs in table.items():
            acc = {(n, key)}
            for pair in fs:
                acc |= down[nondeg(pair)]
            down[(n, key)] = frozenset(acc)
    return Poset(Z.elements(), down)


def nerve_of_poset(P: Poset, cap: int) -> TruncatedSSet:
    """Nerve through ``cap``: ``n``-simplices are chains ``p_0 < ... < p_n``."""
    return TruncatedSSet(cap, [_deletion_table(P.chains(n + 1)) for n in range(cap + 1)])


def generated_subcomplex(Z: TruncatedSSet, sigma: Element) -> TruncatedSSet:
    """The subcomplex generated by a non-degenerate simplex: non-degenerate
    parts of ``θ*(σ)`` over every ordinal map θ with domain dimension <= cap."""
    n, key = sigma
    if not Z.has(n, key):
        raise UnknownSimplex(sigma)
    members = set()
    top = simplex(key, n)
    for m in range(Z.cap + 1):
        for theta in monotone_maps(m, n):
            members.add(nondeg(apply_ordinal(Z, top, theta)))
    return Z.restrict(members)


def path_components(Z: TruncatedSSet) -> list[list[Key]]:
    """Vertex partition by non-degenerate edges; blocks and members keep
    the complex's vertex order."""
    parent = {v: v for v in Z.faces[0]}
    pos = {v: i for i, v in enumerate(Z.faces[0])}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if Z.cap >= 1:
        for fs in Z.faces[1].values():
            a, b = find(fs[0][0]), find(fs[1][0])
            if a != b:
                if pos[a] < pos[b]:
                    a, b = b, a
                parent[a] = b
    blocks: dict = {}
    for v in Z.faces[0]:
        blocks.setdefault(find(v), []).append(v)
    return list(blocks.values())


# --------------------------------------------------------------------- maps

@dataclass
class SSetMap:
    """A simplicial map given on non-degenerate simplices.

    ``images[(n, key)]`` is the EZ pair (in ``target``) of the image of the
    stored ``n``-simplex ``key``; degenerate simplices follow by
    naturality."""

    source: TruncatedSSet
    target: TruncatedSSet
    images: dict = field(default_factory=dict)

    def __call__(self, pair: EZ) -> EZ:
        key, s = pair
        y, t = self.images[(s[-1], key)]
        return (y, compose(t, s))

    def violations(self, limit: int | None = 1) -> list[tuple]:
        out = []
        for n, table in enumerate(self.source.faces):
            for key, fs in table.items():
                img = self.images.get((n, key))
                if img is None or len(img[1]) != n + 1 or not self.target.has(img[1][-1], img[0]):
                    out.append(("missing or malformed image", (n, key)))
                elif n:
                    for i, pair in enumerate(fs):
                        lhs = self(pair)
                        rhs = apply_ordinal(self.target, img, coface(i, n))
                        if lhs != rhs:
                            out.append((f"d_{i} does not commute", (n, key, lhs, rhs)))
                if limit is not None and len(out) >= limit:
                    return out
        return out

    def commutes(self) -> bool:
        return not self.violations()

    def is_bijection(self) -> bool:
        """Non-degenerate simplices map bijectively onto non-degenerate
        simplices in every dimension through the caps."""
        if self.source.cap != self.target.cap:
            return False
        for n in range(self.source.cap + 1):
            hit = set()
            for key in self.source.faces[n]:
                img = self.images[(n, key)]
                if not is_nondegenerate(img) or img[0] in hit:
                    return False
                hit.add(img[0])
            if hit != set(self.target.faces[n]):
                return False
        return True

    def is_injective(self) -> bool:
        seen = set()
        for (n, key), img in self.images.items():
            if not is_nondegenerate(img) or (n, img[0]) in seen:
                return False
            seen.add((n, img[0]))
        return True


def inclusion(A: TruncatedSSet, B: TruncatedSSet) -> SSetMap:
    """Key-preserving inclusion of a subcomplex."""
    if not A.is_subcomplex_of(B):
        raise SSetError("not a subcomplex")
    return SSetMap(A, B, {(n, k): simplex(k, n) for n, k in A.elements()})


# ---------------------------------------------------------------- subdivision

@lru_cache(maxsize=None)
def _subsets(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(c for r in range(1, n + 2) for c in itertools.combinations(range(n + 1), r))


@lru_cache(maxsize=None)
def strict_chains(n: int, k: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Chains ``S_0 ⊊ ... ⊊ S_k`` of non-empty subsets of ``[n]``."""
    if k == 0:
        return tuple((S,) for S in _subsets(n))
    out = []
    for c in strict_chains(n, k - 1):
        last = set(c[-1])
        for S in _subsets(n):
            if len(S) > len(last) and last.issubset(S):
                out.append(c + (S,))
    return tuple(out)


def _push_chain(theta: Sequence[int], chain) -> tuple:
    return tuple(tuple(sorted({theta[v] for v in S})) for S in chain)


class _UnionFind:
    """Union-find whose class root is always the least member."""

    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        self.add(a)
        self.add(b)
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class Subdivision:
    """``sd(Z)`` as the colimit of the nerves ``BNΔ^n`` over the simplices
    of ``Z``.

    Generators are triples ``(n, key, chain)``: a stored ``n``-simplex of
    ``Z`` and a chain of subsets of ``[n]``. Classes are named by their least
    generator, which is also the key of the class in ``sset``. ``members``
    lists every generator of every class, including generators whose chain
    has repeats (these mark degenerate classes, which are not stored).
    """

    source: TruncatedSSet
    sset: TruncatedSSet
    members: dict

    @classmethod
    def build(cls, Z: TruncatedSSet, cap: int | None = None) -> "Subdivision":
        cap = Z.cap if cap is None else cap
        if cap > Z.cap:
            raise CapExceeded(f"subdivision cap {cap} exceeds source cap {Z.cap}")
        uf = _UnionFind()
        for n in range(cap + 1):
            for key in Z.faces[n]:
                for k in range(min(n, cap) + 1):
                    for c in strict_chains(n, k):
                        uf.add((n, key, c))
        # Strict chains pushed along every proper face; non-strict images
        # enter the union-find only as witnesses of degeneracy.
        for n in range(1, cap + 1):
            for key in Z.faces[n]:
                top = simplex(key, n)
                for m in range(n):
                    for delta in injections(m, n):
                        x, s = apply_ordinal(Z, top, delta)
                        j = s[-1]
                        for k in range(min(m, cap) + 1):
                            for c in strict_chains(m, k):
                                uf.union((n, key, _push_chain(delta, c)), (j, x, _push_chain(s, c)))
        members: dict = {}
        for g in uf.parent:
            members.setdefault(uf.find(g), []).append(g)
        degenerate_witness = {}
        for root, ms in members.items():
            ms.sort()
            for g in ms:
                if any(a == b for a, b in zip(g[2], g[2][1:])):
                    degenerate_witness[root] = g
                    break

        memo: dict = {}

        def ez(gen) -> EZ:
            root = uf.find(gen)
            if root in memo:
                return memo[root]
            k = len(gen[2]) - 1
            w = degenerate_witness.get(root)
            if w is None:
                res = (root, identity(k))
            else:
                runs, s = collapse_runs(w[2])
                x, t = ez((w[0], w[1], runs))
                res = (x, compose(t, s))
            memo[root] = res
            return res

        tables = [{} for _ in range(cap + 1)]
        for root in sorted(members):
            if root in degenerate_witness:
                continue
            n, key, c = root
            k = len(c) - 1
            if k:
                fs = tuple(ez((n, key, c[:i] + c[i + 1:])) for i in range(k + 1))
            else:
                fs = ()
            tables[k][root] = fs
        return cls(Z, TruncatedSSet(cap, tables), members)

    def class_of(self, gen) -> Key:
        for root, ms in self.members.items():
            if gen in ms:
                return root
        raise UnknownSimplex(gen)


def subdivide(Z: TruncatedSSet) -> TruncatedSSet:
    return Subdivision.build(Z).sset


def _pi_generator(Z: TruncatedSSet, gen) -> EZ:
    n, key, chain = gen
    top = simplex(key, n)
    elems = tuple(nondeg(apply_ordinal(Z, top, S)) for S in chain)
    runs, s = collapse_runs(elems)
    return (runs, s)


def pi_map(Z: TruncatedSSet, sd: Subdivision | None = None,
           BN: TruncatedSSet | None = None) -> SSetMap:
    """``sd(Z) -> BNZ``: a chain of subsets of σ goes to the chain of
    non-degenerate parts of the corresponding faces of σ."""
    sd = sd or Subdivision.build(Z)
    BN = BN if BN is not None else nerve_of_poset(nondeg_poset(Z), sd.sset.cap)
    images = {(len(r[2]) - 1, r): _pi_generator(Z, r) for r in _stored_roots(sd)}
    return SSetMap(sd.sset, BN, images)


def pi_is_well_defined(Z: TruncatedSSet, sd: Subdivision) -> bool:
    """Every generator of a stored class has the same image under π."""
    for root in _stored_roots(sd):
        img = _pi_generator(Z, root)
        if any(_pi_generator(Z, g) != img for g in sd.members[root]):
            return False
    return True


def _stored_roots(sd: Subdivision) -> Iterator:
    for table in sd.sset.faces:
        yield from table


def last_vertex_map(Z: TruncatedSSet, sd: Subdivision | None = None) -> SSetMap:
    """``γ: sd(Z) -> Z``: the class of ``(σ, S_0 ⊆ ... ⊆ S_k)`` goes to
    ``θ*(σ)`` with ``θ(i) = max S_i``."""
    sd = sd or Subdivision.build(Z)
    images = {}
    for root in _stored_roots(sd):
        n, key, chain = root
        theta = tuple(max(S) for S in chain)
        images[(len(chain) - 1, root)] = apply_ordinal(Z, simplex(key, n), theta)
    return SSetMap(sd.sset, Z, images)
