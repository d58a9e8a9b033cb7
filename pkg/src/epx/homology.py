"""Normalized integer chains and homology through Smith normal form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .sset import TruncatedSSet, path_components

# Set by the test suite: every smith_normal_form call verifies its own output.
CHECK_SNF = False


class CapTooLow(Exception):
    pass


class SNFCheckFailed(AssertionError):
    pass


@dataclass
class ChainComplex:
    """Basis of non-degenerate simplices per degree and sparse boundaries.

    ``boundary[n]`` maps column index (an ``n``-simplex) to ``{row: coeff}``
    over the ``(n-1)``-simplices; ``boundary[0]`` is empty.
    """

    basis: list[list]
    boundary: list[dict[int, dict[int, int]]]

    @property
    def top(self) -> int:
        return len(self.basis) - 1

    def rank(self, n: int) -> int:
        return len(self.basis[n]) if 0 <= n <= self.top else 0

    def dense(self, n: int) -> np.ndarray:
        """``∂_n`` as an integer matrix of shape ``(C_{n-1}, C_n)``."""
        M = np.zeros((self.rank(n - 1), self.rank(n)), dtype=np.int64)
        if 1 <= n <= self.top:
            for j, col in self.boundary[n].items():
                for i, v in col.items():
                    M[i, j] = v
        return M


def boundary_matrices(Z: TruncatedSSet, kmax: int) -> ChainComplex:
    """Normalized chains of ``Z`` through degree ``kmax``: a face counts with
    sign ``(-1)^i`` when it is non-degenerate and is dropped otherwise."""
    if Z.cap < kmax:
        raise CapTooLow(f"cap {Z.cap} < {kmax}")
    basis = [list(Z.faces[n]) for n in range(kmax + 1)]
    index = [{k: i for i, k in enumerate(b)} for b in basis]
    boundary: list[dict[int, dict[int, int]]] = [{}]
    for n in range(1, kmax + 1):
        cols: dict[int, dict[int, int]] = {}
        for j, key in enumerate(basis[n]):
            col: dict[int, int] = {}
            for i, (fk, s) in enumerate(Z.faces[n][key]):
                if s[-1] == n - 1:
                    r = index[n - 1][fk]
                    col[r] = col.get(r, 0) + (-1 if i % 2 else 1)
            col = {r: v for r, v in col.items() if v}
            if col:
                cols[j] = col
        boundary.append(cols)
    return ChainComplex(basis, boundary)


# ------------------------------------------------------------ Smith normal form

def _det(M: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    A = [row[:] for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _smallest(A, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            v = A[i][j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return best


def smith_normal_form(M, check: bool | None = None):
    """Return ``(U, D, V)`` with ``U @ M @ V == D``, ``U`` and ``V``
    unimodular and ``D`` diagonal with ``d_1 | d_2 | ...``, all non-negative.

    Pivots are the smallest non-zero entry of the remaining block, ties
    broken in row-major order. Arithmetic is exact (Python integers); the
    results are numpy object arrays.
    """
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2:
        if arr.size:
            raise ValueError("smith_normal_form expects a matrix")
        arr = arr.reshape(0, 0)
    m, n = arr.shape
    A = [[int(x) for x in row] for row in arr.tolist()]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = _smallest(A, range(t, m), range(t, n))
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]

    Ua = np.array(U, dtype=object).reshape(m, m)
    Da = np.array(A, dtype=object).reshape(m, n)
    Va = np.array(V, dtype=object).reshape(n, n)
    if CHECK_SNF if check is None else check:
        verify_snf(M, Ua, Da, Va)
    return Ua, Da, Va


def verify_snf(M, U, D, V) -> None:
    """Raise ``SNFCheckFailed`` unless ``(U, D, V)`` is a Smith decomposition of ``M``."""
    m, n = D.shape
    Ml = [[int(x) for x in row] for row in np.asarray(M, dtype=object).reshape(m, n).tolist()]
    if m and n and _matmul(_matmul(U.tolist(), Ml), V.tolist()) != D.tolist():
        raise SNFCheckFailed("U M V != D")
    for i in range(m):
        for j in range(n):
            if i != j and D[i, j]:
                raise SNFCheckFailed("D is not diagonal")
    diag = [int(D[i, i]) for i in range(min(m, n))]
    if any(x < 0 for x in diag):
        raise SNFCheckFailed("negative diagonal entry")
    for a, b in zip(diag, diag[1:]):
        if (a == 0 and b != 0) or (a and b % a):
            raise SNFCheckFailed(f"{a} does not divide {b}")
    for T in (U, V):
        if abs(_det(T.tolist())) != 1:
            raise SNFCheckFailed("transform is not unimodular")


def elementary_divisors(cols: dict[int, dict[int, int]]) -> list[int]:
    """Non-zero Smith invariants of a sparse integer matrix given by columns.

    Unit pivots are eliminated sparsely first; whatever survives (entries
    with no unit pivot available) goes through the dense Smith form.
    """
    rows: dict[int, dict[int, int]] = {}
    colsets: dict[int, set[int]] = {}
    for c, col in cols.items():
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
                colsets.setdefault(c, set()).add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(colsets):
            rs = colsets.get(c)
            if not rs:
                colsets.pop(c, None)
                continue
            cands = [r for r in rs if abs(rows[r][c]) == 1]
            if not cands:
                continue
            r = min(cands, key=lambda x: (len(rows[x]), x))
            prow = rows.pop(r)
            v = prow[c]
            for c2 in prow:
                colsets[c2].discard(r)
            for r2 in list(colsets[c]):
                row2 = rows[r2]
                f = row2[c] * v
                for c2, val in prow.items():
                    nv = row2.get(c2, 0) - f * val
                    if nv:
                        if c2 not in row2:
                            colsets[c2].add(r2)
                        row2[c2] = nv
                    elif c2 in row2:
                        del row2[c2]
                        colsets[c2].discard(r2)
                if not row2:
                    del rows[r2]
            colsets.pop(c, None)
            units += 1
            progress = True
    live_cols = sorted(c for c, rs in colsets.items() if rs)
    live_rows = sorted(r for r, row in rows.items() if row)
    rest: list[int] = []
    if live_cols:
        cpos = {c: j for j, c in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for i, r in enumerate(live_rows):
            for c, v in rows[r].items():
                dense[i][cpos[c]] = v
        _, D, _ = smith_normal_form(np.array(dense, dtype=object).reshape(len(live_rows), len(live_cols)))
        rest = [int(D[i, i]) for i in range(min(D.shape)) if D[i, i]]
    return [1] * units + rest


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    reduced: bool = False

    def to_json(self) -> list[dict]:
        return [{"degree": k, "betti": b, "torsion": list(t)}
                for k, (b, t) in enumerate(zip(self.betti, self.torsion))]

    def same_as(self, other: "HomologyResult") -> bool:
        return self.betti == other.betti and self.torsion == other.torsion


def homology(Z: TruncatedSSet, kmax: int, reduced: bool = False) -> HomologyResult:
    """Integral homology ``H_0 .. H_kmax``; needs ``cap >= kmax + 1``."""
    if Z.cap < kmax + 1:
        raise CapTooLow(f"H_{kmax} needs cap >= {kmax + 1}, got {Z.cap}")
    C = boundary_matrices(Z, kmax + 1)
    divisors = [[]] + [elementary_divisors(C.boundary[n]) for n in range(1, kmax + 2)]
    betti, torsion = [], []
    for k in range(kmax + 1):
        b = C.rank(k) - len(divisors[k]) - len(divisors[k + 1])
        if k == 0 and reduced and C.rank(0):
            b -= 1
        betti.append(b)
        torsion.append(tuple(sorted(d for d in divisors[k + 1] if d > 1)))
    return HomologyResult(tuple(betti), tuple(torsion), reduced)


def betti_numbers(Z: TruncatedSSet, kmax: int, reduced: bool = False) -> tuple[int, ...]:
    return homology(Z, kmax, reduced).betti


def check_components(Z: TruncatedSSet) -> bool:
    """``rank H_0`` equals the number of path components."""
    return homology(Z.with_cap(max(Z.cap, 1)), 0).betti[0] == len(path_components(Z))


def homology_report(results: Sequence[HomologyResult]) -> list[dict]:
    return [rec for h in results for rec in h.to_json()]
