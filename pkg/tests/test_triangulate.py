from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from tricomplex.exact import cf_of_rational
from tricomplex.farey import BASE, FareyTriangle, Slope, ZERO, tree_path
from tricomplex.psl2z import IntMatrix
from tricomplex.triangulate import (
    GluingError,
    GluingTable,
    build_layered_solid_torus,
    build_lens,
    build_sol,
    build_torus_product,
    homology,
    invariant_factors,
    layer_tetrahedron,
    product_block,
    validate,
)
from tricomplex.triangulate.gluing import perm_compose, perm_inverse, perm_sign, skeleton
from tricomplex.triangulate.homology import edge_chain

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_invariant_factors_match_sympy(m):
    snf = smith_normal_form(Matrix(m))
    expected = sorted(abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0)
    assert sorted(invariant_factors(m)) == expected
    got = invariant_factors(m)
    assert all(b % a == 0 for a, b in zip(got, got[1:]))


def test_invariant_factor_examples():
    assert invariant_factors([[2, 4], [6, 8]]) == [2, 4]
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert invariant_factors([[6, 0], [0, 4]]) == [2, 12]


@given(st.permutations(range(4)), st.permutations(range(4)))
def test_permutation_helpers(p, q):
    p, q = tuple(p), tuple(q)
    assert perm_compose(p, perm_inverse(p)) == (0, 1, 2, 3)
    assert perm_sign(perm_compose(p, q)) == perm_sign(p) * perm_sign(q)


def doubled_tetrahedron() -> GluingTable:
    g = GluingTable(2)
    for f in range(4):
        g.glue(0, f, 1, (0, 1, 2, 3))
    return g


def test_doubled_tetrahedron_is_a_closed_sphere():
    g = doubled_tetrahedron()
    rep = validate(g)
    assert rep.closed and rep.orientable and rep.is_manifold
    assert rep.euler == 0
    assert homology(g).ranks == [1, 0, 0, 1]


def test_single_tetrahedron_is_a_ball():
    g = GluingTable(1)
    rep = validate(g)
    assert not rep.closed
    assert rep.euler == 1
    assert [(b.faces, b.edges, b.vertices) for b in rep.boundary] == [(4, 6, 4)]
    assert homology(g).ranks == [1, 0, 0, 0]


def test_glue_rejects_conflicts():
    g = GluingTable(2)
    g.glue(0, 0, 1, (0, 1, 2, 3))
    with pytest.raises(GluingError):
        g.glue(0, 0, 1, (1, 0, 2, 3))
    with pytest.raises(GluingError):
        g.glue(0, 1, 0, (1, 0, 2, 3))


def test_table_text_and_json_round_trip():
    for g in (build_lens(7, 2), build_sol(IntMatrix(3, 1, 2, 1)), product_block(BASE).table, GluingTable(1)):
        assert GluingTable.from_text(g.to_text()) == g
        assert GluingTable.from_json(g.to_json()) == g


def test_from_text_reports_errors():
    with pytest.raises(GluingError):
        GluingTable.from_text("tet 0: 0(1023) bdry bdry bdry\n")
    with pytest.raises(ValueError):
        GluingTable.from_text("tet 0: 0(10x3) - - -\n")


@pytest.mark.parametrize("p, q, tets", [(3, 1, 1), (5, 2, 2), (7, 2, 3), (13, 5, 4)])
def test_layered_solid_torus_counts(p, q, tets):
    lst = build_layered_solid_torus(p, q)
    assert len(lst.table) == tets == sum(cf_of_rational(Fraction(p, q))) - 2
    rep = validate(lst.table)
    assert rep.orientable and rep.is_manifold and not rep.closed
    assert [(b.faces, b.edges, b.vertices) for b in rep.boundary] == [(2, 3, 1)]
    assert homology(lst.table).h1 == "Z"


def _state_edges(state):
    """Directed tetrahedron edges realizing the boundary vectors a, b and c."""
    (t, p0), (_, pa), (_, pc) = state.plus
    (u, q0), (_, qb), _ = state.minus
    return {"a": (t, p0, pa), "b": (u, q0, qb), "c": (t, p0, pc)}


@pytest.mark.parametrize("p", range(3, 30))
def test_layered_solid_torus_edge_weights_by_homology(p):
    """Capping off a boundary edge of weight w leaves H1 = Z/w."""
    for q in range(1, p):
        if gcd(p, q) != 1:
            continue
        lst = build_layered_solid_torus(p, q)
        sk = skeleton(lst.table)
        weights = dict(zip("abc", lst.weights()))
        assert sorted(weights.values()) == sorted((q, p - q, p))
        for name, (t, i, j) in _state_edges(lst.state).items():
            hom = homology(lst.table, extra_relations=[edge_chain(sk, t, i, j)])
            w = weights[name]
            assert hom.ranks[1] == 0
            assert hom.torsion[1] == ([w] if w > 1 else [])


def test_meridian_slope():
    for p in range(3, 40):
        for q in range(1, p):
            if gcd(p, q) == 1:
                assert build_layered_solid_torus(p, q).meridian_slope() == Slope(p, q)


def test_solid_torus_needs_valid_pair():
    with pytest.raises(ValueError):
        build_layered_solid_torus(6, 2)
    with pytest.raises(ValueError):
        build_lens(5, 5)


@pytest.mark.parametrize(
    "p, q, tets", [(5, 2, 1), (4, 1, 1), (7, 2, 2), (2, 1, 2), (3, 1, 2), (3, 2, 2)]
)
def test_lens_examples(p, q, tets):
    g = build_lens(p, q)
    rep = validate(g)
    assert len(g) == tets
    assert rep.closed and rep.orientable and rep.is_manifold and rep.euler == 0
    hom = homology(g)
    assert hom.ranks == [1, 0, 0, 1]
    assert hom.torsion[1] == [p]


def test_lens_5_2_full_homology():
    hom = homology(build_lens(5, 2))
    assert [hom.group(k) for k in range(4)] == ["Z", "Z/5", "0", "Z"]


def test_layer_tetrahedron_example():
    prod = product_block(BASE)
    new = layer_tetrahedron(prod.table, prod.top, ZERO)
    assert new.triple == FareyTriangle.parse("{1, 2, inf}")
    assert len(prod.table) == 7


def test_product_block():
    prod = product_block(BASE)
    assert len(prod.table) == 6
    assert prod.bottom.triple == prod.top.triple == BASE
    rep = validate(prod.table)
    assert rep.orientable and rep.is_manifold and rep.euler == 0
    assert [(b.faces, b.edges, b.vertices) for b in rep.boundary] == [(2, 3, 1), (2, 3, 1)]
    hom = homology(prod.table)
    assert hom.ranks == [1, 2, 1, 0] and hom.torsion == [[], [], [], []]


def test_torus_product_path_of_length_four():
    target = FareyTriangle.parse("{3/2, 5/3, 2}")
    path = tree_path(BASE, target)
    assert len(path) == 4
    prod = build_torus_product(path)
    assert len(prod.table) == 9
    assert prod.top.triple == target


def test_torus_product_rejects_bad_path():
    with pytest.raises(ValueError):
        build_torus_product([BASE, FareyTriangle.parse("{1, 3/2, 2}")])


@pytest.mark.parametrize(
    "matrix, h1, bound",
    [((2, 1, 1, 1), "Z", 8), ((3, 1, 2, 1), "Z + Z/2", 9), ((-2, -1, -1, -1), "Z + Z/5", 8)],
)
def test_sol_examples(matrix, h1, bound):
    g = build_sol(IntMatrix(*matrix))
    rep = validate(g)
    assert rep.closed and rep.orientable and rep.is_manifold and rep.euler == 0
    assert len(g) <= bound
    assert homology(g).h1 == h1


def test_sol_full_homology():
    hom = homology(build_sol(IntMatrix(2, 1, 1, 1)))
    assert [hom.group(k) for k in range(4)] == ["Z", "Z", "Z", "Z"]


def test_sol_needs_anosov():
    with pytest.raises(ValueError, match="Parabolic"):
        build_sol(IntMatrix(1, 1, 0, 1))


@settings(max_examples=30)
@given(st.integers(-12, 12), st.integers(-12, 12))
def test_sol_conjugate_monodromies_agree(x, y):
    """Conjugate monodromies give homeomorphic bundles, so H1 must agree."""
    A = IntMatrix(2, 1, 1, 1)
    B = IntMatrix(1, x, 0, 1) @ IntMatrix(1, 0, y, 1)
    assert homology(build_sol(B @ A @ B.inverse())).h1 == homology(build_sol(A)).h1
