import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from epx import oracles
from epx.adjunction import (
    counit_vr,
    distinct_list,
    eta_poset,
    is_singular_simplex,
    partial_realize,
    realize,
    realize_representable,
    singular_at,
    singular_system,
)
from epx.ep_metric import INF, EpMetricSpace, euclidean_space, standard_space, validate_ep_metric
from epx.homology import homology
from epx.sset import (
    from_ordered_complex,
    generated_subcomplex,
    nerve_of_poset,
    standard_simplex,
    validate_sset,
)
from epx.systems import (
    FilteredSSet,
    critical_values,
    degree_rips_system,
    evaluate_at,
    one_skeleton,
    represent,
    vr_stage,
    vr_system,
)

point_sets = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=n, max_size=n))


def space(points):
    return euclidean_space(np.array(points, dtype=float))


def line3():
    return validate_ep_metric("abc", [[0, 1, 1.9], [1, 0, 1], [1.9, 1, 0]])


# -------------------------------------------------------------- realization

def test_realize_representable_simplex():
    for n, s in ((0, 1.0), (2, 3.0), (3, 0.5)):
        R = realize(represent(s, standard_simplex(n)))
        U = standard_space(n, s)
        assert np.array_equal(R.d, U.d)


def test_realize_rips_recovers_space():
    X = line3()
    assert realize(vr_system(X)) == X


def test_late_edge_sets_the_distance():
    # both vertices exist from 0, the edge only from 5
    K0 = from_ordered_complex(["a", "b"], [["a"], ["b"]], 1)
    K1 = from_ordered_complex(["a", "b"], [["a", "b"]], 1)
    F = FilteredSSet((0.0, 5.0), (K0, K1))
    R = realize(F)
    assert R.dist("a", "b") == 5
    verts, d = oracles.stage_path_realization(F.values, F.stages)
    assert np.array_equal(d, R.d)


def test_partial_realization_examples():
    F = vr_system(line3())
    assert partial_realize(F, INF) == realize(F)
    P = partial_realize(F, 1)
    assert P.dist("a", "c") == 2 >= 1.9
    X = euclidean_space([[0, 0], [1, 0]])
    Q = partial_realize(degree_rips_system(X, 2), 0.5)
    assert len(Q) == 0
    R = partial_realize(vr_system(X), 0.5)
    assert R.d[0, 1] == INF


def test_realize_representable_closed_form():
    assert realize_representable(2, standard_simplex(1)).d[0, 1] == 2
    path = from_ordered_complex([0, 1, 2], [[0, 1], [1, 2]], 1)
    R = realize_representable(2, path)
    assert R.dist("0", "2") == 4
    assert realize(represent(2, path)) == R
    split = from_ordered_complex([0, 1, 2], [[0, 1], [2]], 1)
    assert realize_representable(1.5, split).dist("0", "2") == INF
    with pytest.raises(ValueError):
        realize_representable(0, path)


@given(point_sets)
def test_realize_vr_and_degree_rips(points):
    X = space(points)
    assert realize(vr_system(X)).allclose(X, 1e-9)
    for k in (1, 2):
        if k <= len(X):
            assert realize(degree_rips_system(X, k)).allclose(X, 1e-9)


@given(point_sets)
def test_partial_realizations_shrink_and_dominate(points):
    X = space(points)
    F = vr_system(X)
    R = realize(F)
    prev = None
    for t in F.values:
        P = partial_realize(F, t)
        assert np.all(P.d >= R.d)
        if prev is not None:
            assert np.all(P.d <= prev.d)
        prev = P
    assert partial_realize(F, F.values[-1]) == R


@given(point_sets)
def test_realization_ignores_higher_simplices(points):
    F = vr_system(space(points))
    assert realize(F) == realize(one_skeleton(F))


def test_bad_chain_distance_bounded_by_each_stage():
    from epx.verify import bad_colimit_space
    C, dists = bad_colimit_space(8)
    assert len(C) == 2
    assert all(C.d[0, 1] <= d for d in dists)
    assert math.isclose(C.d[0, 1], 2.0 ** -8, rel_tol=1e-12)


# -------------------------------------------------------------- singular side

def test_two_point_singular_complex():
    Y = validate_ep_metric("ab", [[0, 1], [1, 0]])
    S = singular_at(Y, 1, 2)
    assert set(S.faces[1]) == {("a", "b"), ("b", "a")}
    assert set(S.faces[2]) == {("a", "b", "a"), ("b", "a", "b")}
    assert validate_sset(S)
    brute = [t for t in itertools.product("ab", repeat=3) if t[0] != t[1] and t[1] != t[2]]
    assert set(S.faces[2]) == set(brute)


def test_small_scale_gives_discrete_vertices():
    S = singular_at(line3(), 0.5, 3)
    assert S.counts() == (3, 0, 0, 0)


def test_singular_complex_at_infinity_is_acyclic():
    Y = validate_ep_metric("abc", [[0, 1, INF], [1, 0, INF], [INF, INF, 0]])
    h = homology(singular_at(Y, INF, 3), 2)
    assert h.betti == (1, 0, 0) and not any(h.torsion)


def test_singular_system():
    P = validate_ep_metric(["x"], [[0]])
    F = singular_system(P)
    assert len(F) == 1 and F.final.counts() == (1, 0, 0, 0)
    G = singular_system(line3())
    for a, b in zip(G.stages, G.stages[1:]):
        assert a.is_subcomplex_of(b)
    assert G.values == (0.0, 1.0, 1.9)


@given(point_sets, st.floats(0, 9))
def test_singular_simplices_are_close_tuples(points, s):
    X = space(points)
    S = singular_at(X, s, 2)
    for n in range(3):
        for key in S.faces[n]:
            assert is_singular_simplex(X, key, s)
            assert all(a != b for a, b in zip(key, key[1:]))


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("s", [1.0, 2.0, 3.0])
def test_maps_from_representable_match_morphisms(n, s):
    Y = validate_ep_metric("abc", [[0, 1, 3], [1, 0, 2], [3, 2, 0]])
    S = evaluate_at(singular_system(Y, 2), s)
    assert oracles.count_simplices(S, n) == oracles.count_morphisms_from_standard(Y, n, s)


# -------------------------------------------------------------- comparison maps

def test_counit_examples():
    X = euclidean_space([[0, 0], [1, 0], [0, 1], [1, 1]], list("abcd"))
    eta = counit_vr(X, 1.5)
    assert eta.images[(0, ("a",))] == (("a",), (0,))
    assert eta.images[(1, ("a", "b"))] == (("a", "b"), (0, 1))
    assert eta.commutes() and eta.is_injective()


def test_distinct_list():
    X = validate_ep_metric("ab", [[0, 1], [1, 0]])
    assert distinct_list(("a", "b", "a"), X) == ("a", "b")
    assert distinct_list(("b", "a"), X) == ("a", "b")
    assert distinct_list(("a",), X) == ("a",)


@pytest.mark.parametrize("seed", range(3))
def test_poset_maps(seed):
    X = euclidean_space(np.random.default_rng(seed).random((3, 2)), list("abc"))
    for t in critical_values(X):
        P = eta_poset(X, t)
        assert P.eta_is_monotone() and P.back_is_monotone() and P.retracts()
        V, S = vr_stage(X, t, 3), singular_at(X, t, 3)
        assert homology(nerve_of_poset(P.source, 3), 2).same_as(homology(nerve_of_poset(P.target, 3), 2))
        assert homology(V, 2).same_as(homology(S, 2))


def test_generated_subcomplexes_are_acyclic():
    X = euclidean_space([[0, 0], [1, 0], [0, 1]], list("abc"))
    S = singular_at(X, 2, 3)
    for sigma in S.elements():
        h = homology(generated_subcomplex(S, sigma), 2, reduced=True)
        assert h.betti == (0, 0, 0) and not any(h.torsion)


def test_square_compares_as_circle():
    X = euclidean_space([[0, 0], [1, 0], [1, 1], [0, 1]], list("abcd"))
    hv, hs = homology(vr_stage(X, 1, 3), 2), homology(singular_at(X, 1, 3), 2)
    assert hv.betti[:2] == hs.betti[:2] == (1, 1)
    assert isinstance(realize(vr_system(X)), EpMetricSpace)
