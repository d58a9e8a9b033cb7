import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from epx import oracles
from epx.ep_metric import (
    INF,
    AxiomViolation,
    EpMetricSpace,
    EpMorphism,
    NotSurjective,
    UnknownPoint,
    coequalizer,
    colimit,
    coproduct,
    euclidean_space,
    format_dist,
    induced_subspace,
    is_nonexpanding,
    metric_identification,
    parse_dist,
    pushout,
    quotient_metric,
    shortest_paths,
    standard_space,
    subspace_pushout,
    validate_ep_metric,
)


def integer_space(draw_weights, n):
    w = np.array(draw_weights, dtype=float).reshape(n, n)
    w = np.minimum(w, w.T)
    np.fill_diagonal(w, 0.0)
    return validate_ep_metric([f"x{i}" for i in range(n)], shortest_paths(w))


@st.composite
def spaces(draw, max_points=5):
    n = draw(st.integers(1, max_points))
    weights = draw(st.lists(st.sampled_from([0.0, 1.0, 2.0, 3.0, 5.0, INF]),
                            min_size=n * n, max_size=n * n))
    return integer_space(weights, n)


# ------------------------------------------------------------- validation

def test_single_point_is_valid():
    X = validate_ep_metric(["a"], [[0]])
    assert len(X) == 1 and X.dist("a", "a") == 0


def test_triangle_violation_names_the_triple():
    with pytest.raises(AxiomViolation) as err:
        validate_ep_metric("abc", [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert err.value.axiom == "triangle"
    assert err.value.witness == ("a", "b", "c")


def test_infinite_distance_allowed():
    X = validate_ep_metric("ab", [[0, "inf"], ["inf", 0]])
    assert X.dist("a", "b") == INF


@pytest.mark.parametrize("matrix,axiom", [
    ([[0, -1], [-1, 0]], "nonnegative"),
    ([[1, 1], [1, 0]], "reflexive"),
    ([[0, 1], [2, 0]], "symmetric"),
    ([[0, 1]], "shape"),
])
def test_other_axiom_violations(matrix, axiom):
    with pytest.raises(AxiomViolation) as err:
        validate_ep_metric("ab", matrix)
    assert err.value.axiom == axiom


def test_distinct_points_may_be_at_distance_zero():
    X = validate_ep_metric("ab", [[0, 0], [0, 0]])
    assert X.dist("a", "b") == 0


def test_extended_distance_arithmetic():
    assert INF + 3.0 == INF
    assert min(INF, 2.0) == 2.0
    assert parse_dist("inf") == INF and format_dist(INF) == "inf"
    assert format_dist(0.1 + 0.2) == 0.3
    with pytest.raises(ValueError):
        parse_dist(-1)


def test_space_is_immutable():
    X = standard_space(1, 1.0)
    with pytest.raises((AttributeError, ValueError)):
        X.d[0, 1] = 5.0
    with pytest.raises(AttributeError):
        X.labels = ("z",)


def test_unknown_point():
    with pytest.raises(UnknownPoint):
        standard_space(1, 1.0).index("nope")


# ------------------------------------------------------------- morphisms

def test_identity_and_constant_maps_are_nonexpanding():
    X = euclidean_space([[0, 0], [1, 0], [0, 2]])
    assert is_nonexpanding({v: v for v in X.labels}, X, X)
    P = standard_space(0, 1.0)
    assert is_nonexpanding({v: "0" for v in X.labels}, X, P)


def test_stretching_map_is_not_nonexpanding():
    U1, U2 = standard_space(1, 1.0), standard_space(1, 2.0)
    assert not is_nonexpanding({"0": "0", "1": "1"}, U1, U2)
    assert is_nonexpanding({"0": "0", "1": "1"}, U2, U1)


def test_map_into_unknown_point():
    U = standard_space(1, 1.0)
    with pytest.raises(UnknownPoint):
        is_nonexpanding({"0": "0", "1": "7"}, U, U)


# ------------------------------------------------------------- constructions

def test_standard_spaces():
    U = standard_space(2, 3.0)
    assert len(U) == 3 and set(U.d[~np.eye(3, dtype=bool)]) == {3.0}
    assert len(standard_space(0, 5.0)) == 1
    assert standard_space(1, INF).dist("0", "1") == INF


def test_coproduct():
    P = standard_space(0, 1.0)
    C, _ = coproduct([P, P])
    assert len(C) == 2 and C.d[0, 1] == INF
    C, inj = coproduct([standard_space(1, 1.0), standard_space(1, 2.0)])
    assert C.d.tolist() == [[0, 1, INF, INF], [1, 0, INF, INF], [INF, INF, 0, 2], [INF, INF, 2, 0]]
    assert all(f.is_nonexpanding() for f in inj)
    assert len(coproduct([])[0]) == 0
    X = standard_space(2, 1.5)
    single, _ = coproduct([X])
    assert np.array_equal(single.d, X.d)


def test_quotient_identity_and_collapse():
    X = euclidean_space([[0, 0], [3, 4]], ["u", "v"])
    assert quotient_metric(X, {"u": "u", "v": "v"}) == X
    Q = quotient_metric(X, {"u": "w", "v": "w"})
    assert len(Q) == 1 and Q.d[0, 0] == 0


def test_quotient_chains_through_identified_points():
    X = validate_ep_metric(
        ["a", "b", "a'", "b'"],
        [[0, 1, INF, INF], [1, 0, INF, INF], [INF, INF, 0, 1], [INF, INF, 1, 0]],
    )
    p = {"a": "a", "b": "m", "a'": "m", "b'": "b'"}
    Q = quotient_metric(X, p)
    assert Q.dist("a", "b'") == 2
    assert oracles.polygonal_quotient(X, p)["a", "b'"] == 2


def test_quotient_rejects_non_surjection():
    X = standard_space(1, 1.0)
    with pytest.raises(NotSurjective):
        quotient_metric(X, {"0": "a", "1": "a"}, target_labels=["a", "b"])


def test_coequalizer_examples():
    X = standard_space(1, 5.0)
    ident = EpMorphism(X, X, {v: v for v in X.labels})
    C, _ = coequalizer(ident, ident)
    assert C == X
    A = standard_space(0, 1.0)
    C, proj = coequalizer(EpMorphism(A, X, {"0": "0"}), EpMorphism(A, X, {"0": "1"}))
    assert len(C) == 1 and proj.is_nonexpanding()


def test_pushout_along_identities():
    X = euclidean_space([[0, 0], [1, 0], [0, 1]])
    ident = EpMorphism(X, X, {v: v for v in X.labels})
    P, legs = pushout(ident, ident)
    order = [P.index(legs[0](v)) for v in X.labels]
    assert np.array_equal(P.d[np.ix_(order, order)], X.d)


def test_pushout_of_triangle_pieces():
    Z = euclidean_space([[0, 0], [0.5, 1], [1, 0]], ["a", "b", "c"])
    M = subspace_pushout(Z, ["a", "b"], ["b", "c"])
    assert math.isclose(M.dist("a", "c"), 2 * math.sqrt(1.25), abs_tol=1e-12)
    assert Z.dist("a", "c") == 1
    assert M.dist("a", "b") == Z.dist("a", "b") and M.dist("b", "c") == Z.dist("b", "c")


def test_metric_identification_examples():
    X = euclidean_space([[0, 0], [1, 0], [0, 1]])
    Y, _ = metric_identification(X)
    assert Y == X
    X = validate_ep_metric("abc", [[0, 0, 2], [0, 0, 2], [2, 2, 0]])
    Y, proj = metric_identification(X)
    assert len(Y) == 2 and Y.d[0, 1] == 2 and proj("a") == proj("b")


def test_induced_subspace():
    X = euclidean_space([[0, 0], [1, 0], [0, 1]])
    assert induced_subspace(X, X.labels) == X
    assert len(induced_subspace(X, ["1"])) == 1
    with pytest.raises(UnknownPoint):
        induced_subspace(X, ["9"])


def test_colimit_of_all_subspaces_recovers_space():
    X = euclidean_space([[0, 0], [1, 0], [0, 1], [2, 2]], list("abcd"))
    subsets = [c for r in range(1, 5) for c in itertools.combinations(X.labels, r)]
    pos = {c: i for i, c in enumerate(subsets)}
    arrows = [(pos[a], pos[b], {v: v for v in a}) for a in subsets for b in subsets
              if a != b and set(a) <= set(b)]
    C, legs = colimit([induced_subspace(X, c) for c in subsets], arrows)
    top = legs[pos[tuple(X.labels)]]
    order = [C.index(top(v)) for v in X.labels]
    assert len(C) == 4 and np.array_equal(C.d[np.ix_(order, order)], X.d)


# ------------------------------------------------------------- properties

@given(spaces())
def test_constructions_satisfy_axioms(X):
    for Y in (coproduct([X, X])[0], metric_identification(X)[0]):
        validate_ep_metric(Y.labels, Y.d)


@given(spaces(), st.data())
def test_quotient_matches_polygonal_paths(X, data):
    img = data.draw(st.lists(st.integers(0, len(X) - 1), min_size=len(X), max_size=len(X)))
    p = {lab: f"c{v}" for lab, v in zip(X.labels, img)}
    Q = quotient_metric(X, p)
    validate_ep_metric(Q.labels, Q.d)
    brute = oracles.as_matrix(Q.labels, oracles.polygonal_quotient(X, p))
    assert np.array_equal(brute, Q.d)
    for a in X.labels:
        for b in X.labels:
            assert Q.dist(p[a], p[b]) <= X.dist(a, b)


@given(spaces())
def test_identification_idempotent_and_separating(X):
    Y, proj = metric_identification(X)
    assert metric_identification(Y)[0] == Y
    off = Y.d[~np.eye(len(Y), dtype=bool)]
    assert np.all(off > 0)
    for a in X.labels:
        for b in X.labels:
            assert Y.dist(proj(a), proj(b)) == X.dist(a, b)


@given(spaces(max_points=4), st.data())
def test_pushout_is_alternating_path_minimum(Z, data):
    X = data.draw(st.lists(st.sampled_from(Z.labels), min_size=1, unique=True))
    Y = data.draw(st.lists(st.sampled_from(Z.labels), min_size=1, unique=True))
    M = subspace_pushout(Z, X, Y)
    brute = oracles.as_matrix(M.labels, oracles.alternating_distance(Z, X, Y))
    assert np.array_equal(brute, M.d)
    amb = induced_subspace(Z, M.labels)
    assert np.all(M.d >= amb.d)
    for S in (X, Y):
        for a in S:
            for b in S:
                assert M.dist(a, b) == Z.dist(a, b)


def _all_maps(X, Z):
    for img in itertools.product(Z.labels, repeat=len(X)):
        yield dict(zip(X.labels, img))


@pytest.mark.parametrize("seed", range(4))
def test_coequalizer_universal_property(seed):
    rng = np.random.default_rng(seed)
    X = integer_space(rng.choice([1.0, 2.0, 3.0, INF], size=16), 4)
    A = integer_space(rng.choice([1.0, 2.0], size=4), 2)
    maps = [f for f in _all_maps(A, X) if is_nonexpanding(f, A, X)]
    f, g = maps[int(rng.integers(len(maps)))], maps[int(rng.integers(len(maps)))]
    C, proj = coequalizer(EpMorphism(A, X, f), EpMorphism(A, X, g))
    targets = [standard_space(1, 1.0), integer_space([0, 2, 1, 2, 0, 1, 1, 1, 0], 3)]
    checked = 0
    for Z in targets:
        for alpha in _all_maps(X, Z):
            if not is_nonexpanding(alpha, X, Z):
                continue
            if any(alpha[f[a]] != alpha[g[a]] for a in A.labels):
                continue
            induced = {}
            for x in X.labels:
                c = proj(x)
                assert induced.setdefault(c, alpha[x]) == alpha[x]
            assert is_nonexpanding(induced, C, Z)
            checked += 1
    assert checked > 0


def test_metric_space_equality_is_exact():
    X = EpMetricSpace(["a", "b"], [[0, 1], [1, 0]])
    Y = EpMetricSpace(["a", "b"], [[0, 1 + 1e-15], [1 + 1e-15, 0]])
    assert X != Y and X.allclose(Y)
