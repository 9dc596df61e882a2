import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricomplex.exact import QuadraticSurd, cf_of_rational, cf_of_surd
from tricomplex.farey import (
    BASE,
    INF,
    ONE,
    ZERO,
    FareyLine,
    FareyTriangle,
    Slope,
    act,
    act_triangle,
    bfs_distances,
    connecting_anosov,
    cutting_sequence,
    is_farey_edge,
    line_distance,
    neighbors,
    orient,
    translation_length,
    tree_distance,
    tree_path,
    triangle_map,
)
from tricomplex.psl2z import GroupWord, IntMatrix, random_anosov, word_to_matrix

BALL = bfs_distances(BASE, 7)


def tri(*xs) -> FareyTriangle:
    return FareyTriangle(*(Slope.of(x) for x in xs))


def walk(rng, start, steps):
    path = [start]
    while len(path) <= steps:
        path.append(rng.choice([y for y in neighbors(path[-1]) if len(path) < 2 or y != path[-2]]))
    return path[-1]


triangles = st.builds(lambda seed, n: walk(random.Random(seed), BASE, n), st.integers(0, 2**32), st.integers(0, 12))
sl2 = st.builds(lambda seed: random_anosov(random.Random(seed), max_length=16), st.integers(0, 2**32))


def test_slope_normalization():
    assert Slope(2, -4) == Slope(-1, 2)
    assert Slope(-3, 0) == INF
    assert str(Slope.parse("inf")) == "inf"
    assert str(Slope(6, 4)) == "3/2"
    with pytest.raises(ValueError):
        Slope(0, 0)


@pytest.mark.parametrize("a, b, edge", [("0", "inf", True), ("1/2", "1/3", True), ("1/2", "3/4", False)])
def test_farey_edges(a, b, edge):
    assert is_farey_edge(Slope.parse(a), Slope.parse(b)) is edge


def test_triangle_rejects_non_unimodular():
    with pytest.raises(ValueError):
        tri("0", "1/2", "inf")


def test_neighbor_examples():
    assert set(neighbors(BASE)) == {tri(0, 1, "1/2"), tri(1, "inf", 2), tri(0, "inf", -1)}
    assert BASE in neighbors(tri(0, "1/2", 1))
    # across {1, 2} the mediant 3/2 is replaced by (1 - 2)/(1 - 1) = inf
    assert set(neighbors(tri(1, "3/2", 2))) == {tri(1, 2, "inf"), tri(1, "3/2", "4/3"), tri("3/2", 2, "5/3")}


@given(triangles)
def test_neighbors_symmetric_and_distinct(t):
    ns = neighbors(t)
    assert len(set(ns)) == 3
    for u in ns:
        assert t in neighbors(u)
        assert len(set(u) & set(t)) == 2


def test_no_cycles_within_radius_8():
    # in a tree, BFS reaches every vertex at depth k by exactly one parent
    depth = {BASE: 0}
    frontier = [BASE]
    for k in range(1, 9):
        nxt = []
        for t in frontier:
            for u in neighbors(t):
                if u in depth:
                    assert depth[u] == k - 2
                else:
                    depth[u] = k
                    nxt.append(u)
        frontier = nxt
        assert len(frontier) == 3 * 2 ** (k - 1)


def test_tree_distance_examples():
    assert tree_distance(BASE, BASE) == 0
    assert tree_distance(BASE, tri(1, 2, "inf")) == 1
    assert tree_distance(BASE, tri(1, "3/2", 2)) == 2


def test_tree_distance_matches_bfs():
    for t, d in BALL.items():
        assert tree_distance(BASE, t) == d
        assert tree_distance(t, BASE) == d


@given(triangles, triangles, triangles)
def test_triangle_inequality(a, b, c):
    assert tree_distance(a, c) <= tree_distance(a, b) + tree_distance(b, c)


@given(triangles, triangles)
def test_tree_path_is_a_path(a, b):
    path = tree_path(a, b)
    assert path[0] == a and path[-1] == b
    assert len(set(path)) == len(path)
    for u, v in zip(path, path[1:]):
        assert v in neighbors(u)


@pytest.mark.parametrize("s1, s2, d", [("inf", "1/2", 1), ("inf", "2/5", 3), ("0", "inf", 0)])
def test_line_distance_examples(s1, s2, d):
    assert line_distance(FareyLine(Slope.parse(s1)), FareyLine(Slope.parse(s2))) == d


def test_line_distance_equal_centres():
    with pytest.raises(ValueError):
        line_distance(FareyLine(ONE), FareyLine(ONE))


def _line_distance_by_ball(s1: Slope, s2: Slope) -> int:
    on1 = [t for t in BALL if s1 in t]
    on2 = [t for t in BALL if s2 in t]
    return min(tree_distance(a, b) for a in on1 for b in on2)


def test_line_distance_matches_ball_search():
    slopes = sorted({s for t, d in BALL.items() if d <= 3 for s in t}, key=Slope.key)
    for s1, s2 in combinations(slopes, 2):
        assert line_distance(FareyLine(s1), FareyLine(s2)) == _line_distance_by_ball(s1, s2), (s1, s2)


@given(sl2, st.integers(1, 40), st.integers(1, 40))
def test_line_distance_is_invariant(A, p, q):
    s = Slope(p, q)
    assert line_distance(FareyLine(INF), FareyLine(s)) == line_distance(FareyLine(act(A, INF)), FareyLine(act(A, s)))


@pytest.mark.parametrize(
    "r, text",
    [(Fraction(5, 2), "L^2 R^2"), (Fraction(3), "L^3"), (Fraction(1, 2), "R^2"), (QuadraticSurd(1, 5, 2), "L^1 R^1 L^1 R^1 L^1")],
)
def test_cutting_sequence_examples(r, text):
    assert str(cutting_sequence(r, max_runs=5)) == text


def test_cutting_sequences_of_rationals():
    for p in range(1, 201):
        for q in range(1, 201):
            r = Fraction(p, q)
            if r.denominator != q:
                continue
            digits = cf_of_rational(r)
            seq = cutting_sequence(r, max_runs=500)
            assert seq.exponents() == [a for a in digits if a], r
            assert seq.runs[0][0] == ("L" if r >= 1 else "R")
            letters = [x for x, _ in seq.runs]
            assert all(x != y for x, y in zip(letters, letters[1:]))


def test_cutting_sequences_of_square_roots():
    for D in range(2, 51):
        if int(D**0.5) ** 2 == D:
            continue
        x = QuadraticSurd.sqrt(D)
        seq = cutting_sequence(x, max_runs=30)
        assert seq.exponents() == cf_of_surd(x).digits(30), D


def test_cutting_sequence_needs_positive_endpoint():
    with pytest.raises(ValueError):
        cutting_sequence(Fraction(-1, 2))


def test_action_examples():
    A = IntMatrix(2, 1, 1, 1)
    assert act(A, ZERO) == ONE
    assert act(A, INF) == Slope(2)
    assert act_triangle(IntMatrix(1, 0, 0, 1), BASE) == BASE
    with pytest.raises(ValueError):
        act(IntMatrix(2, 0, 0, 1), ONE)


@given(sl2, triangles, triangles)
def test_action_is_an_isometry(A, a, b):
    assert tree_distance(act_triangle(A, a), act_triangle(A, b)) == tree_distance(a, b)


def test_triangle_map_examples():
    M = triangle_map((ZERO, ONE, INF), (ZERO, ONE, INF))
    assert M.psl_equal(IntMatrix(1, 0, 0, 1))
    assert triangle_map((ZERO, ONE, INF), (ONE, Slope(2), INF)).psl_equal(IntMatrix(1, 1, 0, 1))


@given(triangles, triangles, st.permutations([0, 1, 2]))
def test_triangle_map_sign_tracks_orientation(t1, t2, perm):
    x = t1.ordered()
    y = [t2.ordered()[i] for i in perm]
    M = triangle_map(x, y)
    assert [act(M, s) for s in x] == y
    assert M.det() == orient(*x) * orient(*y)


@pytest.mark.parametrize(
    "matrix, ell", [(IntMatrix(2, 1, 1, 1), 2), (IntMatrix(3, 1, 2, 1), 3)]
)
def test_translation_length_examples(matrix, ell):
    for method in ("word", "axis_oracle", "fixed_point_cf"):
        assert translation_length(matrix, method) == ell


def test_translation_length_parabolic_and_elliptic():
    R = IntMatrix(1, 1, 0, 1)
    assert translation_length(R, "word") == 1
    assert translation_length(R, "axis_oracle") == 1
    with pytest.raises(ValueError):
        translation_length(R, "fixed_point_cf")
    S = IntMatrix(0, -1, 1, 0)
    assert translation_length(S, "axis_oracle") == 0
    with pytest.raises(ValueError):
        translation_length(S, "word")
    with pytest.raises(ValueError):
        translation_length(IntMatrix(1, 0, 0, 1), "axis_oracle")
    with pytest.raises(ValueError):
        translation_length(R, "bogus")


@settings(max_examples=40)
@given(sl2, st.integers(2, 3))
def test_axis_oracle_scales_with_powers(A, k):
    assert translation_length(A**k, "axis_oracle") == k * translation_length(A, "axis_oracle")


@given(sl2, st.integers(0, 2**32))
def test_translation_length_is_a_conjugacy_invariant(A, seed):
    rng = random.Random(seed)
    B = word_to_matrix(GroupWord([rng.choice(("S", "T")) for _ in range(rng.randint(0, 12))]))
    C = B @ A @ B.inverse()
    assert translation_length(C, "axis_oracle") == translation_length(A, "word")


def test_connecting_anosov_example():
    t1, t2 = BASE, tri(1, "3/2", 2)
    A = connecting_anosov(t1, t2)
    assert act_triangle(A, t1) == t2
    assert abs(A.trace()) > 2
    assert translation_length(A) == 2


def test_connecting_anosov_needs_distance_two():
    with pytest.raises(ValueError):
        connecting_anosov(BASE, tri(1, 2, "inf"))


@given(triangles, st.integers(0, 2**32), st.integers(2, 9))
def test_connecting_anosov_axis_through_both(t1, seed, n):
    t2 = walk(random.Random(seed), t1, n)
    d = tree_distance(t1, t2)
    A = connecting_anosov(t1, t2)
    assert A.det() == 1
    assert act_triangle(A, t1) == t2
    assert translation_length(A, "axis_oracle") == d
    # t2 lies on the axis too
    assert tree_distance(t2, act_triangle(A, t2)) == d
