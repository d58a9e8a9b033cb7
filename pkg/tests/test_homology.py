import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from epx.adjunction import singular_at
from epx.ep_metric import euclidean_space, validate_ep_metric
from epx.homology import (
    CapTooLow,
    SNFCheckFailed,
    boundary_matrices,
    check_components,
    elementary_divisors,
    homology,
    smith_normal_form,
    verify_snf,
)
from epx.sset import (
    boundary_simplex,
    from_ordered_complex,
    nerve_of_poset,
    nondeg_poset,
    path_components,
    standard_simplex,
    subdivide,
)
from epx.systems import vr_stage


def sympy_invariants(M):
    """Non-zero Smith invariants from sympy, normalised to be positive."""
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return []
    D = sympy_snf(Matrix(M.tolist()), domain=ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(rows, cols)) if D[i, i] != 0)


def diag(D):
    return [int(D[i, i]) for i in range(min(D.shape))]


# -------------------------------------------------------------- Smith form

def test_snf_examples():
    U, D, V = smith_normal_form([[2, 0], [0, 3]], check=True)
    assert diag(D) == [1, 6]
    assert (U.dot(np.array([[2, 0], [0, 3]], dtype=object)).dot(V) == D).all()
    _, D, _ = smith_normal_form(np.zeros((2, 3), dtype=int), check=True)
    assert not D.any()
    _, D, _ = smith_normal_form(np.eye(3, dtype=int), check=True)
    assert diag(D) == [1, 1, 1]
    _, D, _ = smith_normal_form(np.zeros((0, 0), dtype=int), check=True)
    assert D.shape == (0, 0)


def test_snf_check_rejects_bad_decomposition():
    M = [[2, 0], [0, 3]]
    U, D, V = smith_normal_form(M)
    D2 = D.copy()
    D2[0, 0], D2[1, 1] = 6, 1
    with pytest.raises(SNFCheckFailed):
        verify_snf(M, U, D2, V)


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_snf_matches_sympy(rows):
    M = np.array(rows, dtype=object)
    U, D, V = smith_normal_form(M, check=True)
    ours = [d for d in diag(D) if d]
    assert ours == sympy_invariants(M)


@given(matrices)
def test_sparse_elimination_matches_dense(rows):
    M = np.array(rows, dtype=object)
    cols = {j: {i: int(M[i, j]) for i in range(M.shape[0]) if M[i, j]} for j in range(M.shape[1])}
    assert sorted(elementary_divisors(cols)) == sympy_invariants(M)


# -------------------------------------------------------------- chains

def test_boundary_examples():
    C = boundary_matrices(standard_simplex(0), 0)
    assert C.dense(1).size == 0
    C = boundary_matrices(standard_simplex(1), 1)
    assert C.dense(1).ravel().tolist() == [-1, 1]


def test_boundary_in_two_point_singular_complex():
    Y = validate_ep_metric("ab", [[0, 1], [1, 0]])
    S = singular_at(Y, 1, 2)
    C = boundary_matrices(S, 2)
    b0 = {k: i for i, k in enumerate(C.basis[0])}
    b1 = {k: i for i, k in enumerate(C.basis[1])}
    d1 = C.dense(1)
    col = d1[:, b1[("a", "b")]]
    assert col[b0[("b",)]] == 1 and col[b0[("a",)]] == -1
    # (a, b, a) has faces (b, a), (a, a) degenerate, (a, b)
    d2 = C.dense(2)
    j = C.basis[2].index(("a", "b", "a"))
    assert d2[b1[("b", "a")], j] == 1 and d2[b1[("a", "b")], j] == 1
    assert np.count_nonzero(d2[:, j]) == 2


@pytest.mark.parametrize("Z", [standard_simplex(3), boundary_simplex(3),
                               singular_at(euclidean_space([[0, 0], [1, 0], [0, 1]]), 1.5, 3),
                               nerve_of_poset(nondeg_poset(boundary_simplex(2)), 3)])
def test_boundary_squares_to_zero(Z):
    C = boundary_matrices(Z, Z.cap)
    for n in range(2, Z.cap + 1):
        assert not (C.dense(n - 1) @ C.dense(n)).any()


# -------------------------------------------------------------- homology

def test_homology_examples():
    assert homology(standard_simplex(3), 2).betti == (1, 0, 0)
    assert homology(boundary_simplex(2, 2), 1).betti == (1, 1)
    X = euclidean_space([[0, 0], [1, 0], [1, 1], [0, 1]], list("abcd"))
    assert homology(vr_stage(X, 1, 2), 1).betti == (1, 1)
    assert homology(boundary_simplex(3), 2).betti == (1, 0, 1)
    assert homology(standard_simplex(2), 1, reduced=True).betti == (0, 0)


def test_cap_too_low():
    with pytest.raises(CapTooLow):
        homology(standard_simplex(2), 2)


def test_torsion_of_projective_plane():
    # 6-vertex triangulation of RP^2
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
             (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    K = from_ordered_complex(range(6), faces, 3)
    h = homology(K, 2)
    assert h.betti == (1, 0, 0) and h.torsion == ((), (2,), ())


def test_components_match_h0(rng):
    for _ in range(10):
        X = euclidean_space(rng.random((6, 2)) * 3)
        for t in (0.3, 0.8, 1.5):
            Z = vr_stage(X, t, 1)
            assert check_components(Z)
            assert homology(Z.with_cap(2), 0).betti[0] == len(path_components(Z))


def test_subdivision_preserves_homology():
    for Z in (boundary_simplex(3), from_ordered_complex(range(5), [{0, 1, 2}, {2, 3}, {3, 4, 0}], 3)):
        assert homology(subdivide(Z), 2).same_as(homology(Z, 2))
