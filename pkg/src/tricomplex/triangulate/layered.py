"""Layered triangulations: solid tori, lens spaces, T^2 x I and Sol manifolds.

A one-vertex torus boundary is tracked in the universal cover Z^2.  Its two
triangles are ``plus`` with corners at lattice points ``0, a, a + b`` and
``minus`` with corners at ``0, b, a + b``; each corner records the
``(tet, vertex)`` sitting there.  Edge vectors ``a``, ``b``, ``c = a + b``
give the slope triple, a vector ``(x, y)`` having slope ``x/y``.

Layering a tetrahedron with vertices at ``0, a, b, a + b`` onto both
triangles covers the diagonal ``c`` and exposes the new diagonal ``b - a``,
which is a flip in the Farey tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Sequence

from ..farey import (
    INF,
    ONE,
    ZERO,
    FareyTriangle,
    Slope,
    act,
    act_triangle,
    axis_vertex,
    det,
    flip,
    tree_path,
    triangle_map,
)
from ..psl2z import IntMatrix, classify
from .gluing import GluingTable

Vec = tuple[int, int]
Corner = tuple[int, int]


def _add(u: Vec, v: Vec) -> Vec:
    return (u[0] + v[0], u[1] + v[1])


def _sub(u: Vec, v: Vec) -> Vec:
    return (u[0] - v[0], u[1] - v[1])


def _neg(u: Vec) -> Vec:
    return (-u[0], -u[1])


def _apply(A: IntMatrix, v: Vec) -> Vec:
    return (A.a * v[0] + A.b * v[1], A.c * v[0] + A.d * v[1])


def vec_slope(v: Vec) -> Slope:
    return Slope(v[0], v[1])


@dataclass(frozen=True)
class BoundaryTorusState:
    a: Vec
    b: Vec
    plus: tuple[Corner, Corner, Corner]  # at 0, a, a + b
    minus: tuple[Corner, Corner, Corner]  # at 0, b, a + b

    @property
    def c(self) -> Vec:
        return _add(self.a, self.b)

    @property
    def triple(self) -> FareyTriangle:
        return FareyTriangle(vec_slope(self.a), vec_slope(self.b), vec_slope(self.c))

    def edge_vector(self, s: Slope) -> Vec:
        for v in (self.a, self.b, self.c):
            if vec_slope(v) == s:
                return v
        raise ValueError(f"{s} is not an edge slope of {self.triple}")

    def relabel(self, s: Slope) -> BoundaryTorusState:
        """Same boundary with the edge of slope ``s`` playing the role of ``c``."""
        P0, P1, P2 = self.plus
        Q0, Q1, Q2 = self.minus
        if vec_slope(self.c) == s:
            return self
        if vec_slope(self.a) == s:
            return BoundaryTorusState(self.c, _neg(self.b), (P0, P2, P1), (Q1, Q0, Q2))
        if vec_slope(self.b) == s:
            return BoundaryTorusState(_neg(self.a), self.c, (P1, P0, P2), (Q0, Q2, Q1))
        raise ValueError(f"{s} is not an edge slope of {self.triple}")

    def positions(self) -> tuple[dict[Corner, Vec], dict[Corner, Vec]]:
        zero = (0, 0)
        plus = dict(zip(self.plus, (zero, self.a, self.c)))
        minus = dict(zip(self.minus, (zero, self.b, self.c)))
        return plus, minus


def glue_corners(g: GluingTable, src: Sequence[Corner], dst: Sequence[Corner]) -> None:
    """Glue the face spanned by corners ``src`` to the face spanned by ``dst``."""
    t, u = src[0][0], dst[0][0]
    assert all(x[0] == t for x in src) and all(y[0] == u for y in dst)
    sv = [x[1] for x in src]
    dv = [y[1] for y in dst]
    f = ({0, 1, 2, 3} - set(sv)).pop()
    h = ({0, 1, 2, 3} - set(dv)).pop()
    perm = [0] * 4
    for x, y in zip(sv, dv):
        perm[x] = y
    perm[f] = h
    g.glue(t, f, u, perm)


def layer_tetrahedron(g: GluingTable, state: BoundaryTorusState, flip_edge: Slope) -> BoundaryTorusState:
    """Layer one tetrahedron on the boundary, flipping away the edge ``flip_edge``.

    The new boundary triple is the Farey neighbour of the old one across the
    edge not containing ``flip_edge``.
    """
    s = state.relabel(flip_edge)
    tau = g.add_tet()
    # tau's vertices sit at 0, a, b, a + b
    glue_corners(g, [(tau, 0), (tau, 1), (tau, 3)], s.plus)
    glue_corners(g, [(tau, 0), (tau, 2), (tau, 3)], s.minus)
    new = BoundaryTorusState(
        _sub(s.b, s.a),
        s.a,
        ((tau, 1), (tau, 2), (tau, 3)),
        ((tau, 0), (tau, 1), (tau, 2)),
    )
    assert new.triple == flip(state.triple, flip_edge)
    return new


def layer_along(g: GluingTable, state: BoundaryTorusState, path: Sequence[FareyTriangle]) -> BoundaryTorusState:
    """Layer along a tree path whose first entry is the current triple."""
    if path and path[0] != state.triple:
        raise ValueError(f"path starts at {path[0]}, boundary is {state.triple}")
    for cur, nxt in zip(path, path[1:]):
        gone = [v for v in cur if v not in nxt]
        if len(gone) != 1:
            raise ValueError(f"{cur} and {nxt} are not adjacent in the Farey tree")
        state = layer_tetrahedron(g, state, gone[0])
    return state


# ---------------------------------------------------------------------------
# layered solid tori and lens spaces

MERIDIAN: Vec = (0, 1)


def _weight(v: Vec) -> int:
    """Geometric intersection number with the meridian ``(0, 1)``."""
    return abs(v[0])


@dataclass
class LayeredSolidTorus:
    table: GluingTable
    state: BoundaryTorusState
    q: int = 1
    meridian: Vec = MERIDIAN

    def weights(self) -> tuple[int, int, int]:
        s = self.state
        return _weight(s.a), _weight(s.b), _weight(s.c)

    def meridian_slope(self) -> Slope:
        """Meridian slope in the frame taking the edges of weight p, p - q, q to 0, 1, inf."""
        s = self.state
        by_weight = sorted((s.a, s.b, s.c), key=_weight, reverse=True)
        p, small, large = by_weight[0], by_weight[2], by_weight[1]
        q_edge, pq_edge = (small, large) if _weight(small) == self.q else (large, small)
        M = triangle_map((vec_slope(p), vec_slope(pq_edge), vec_slope(q_edge)), (ZERO, ONE, INF))
        return act(M, vec_slope(self.meridian))


def _base_solid_torus() -> LayeredSolidTorus:
    """One tetrahedron with face 3 glued to face 0 (0->1->2->3).

    Edge classes are ``{01, 12, 23}``, ``{02, 13}`` and ``{03}``; the face
    ``012`` forces ``[02] = 2 [01]``, so the boundary edges meet the meridian
    disc 1, 2 and 3 times.
    """
    g = GluingTable(1)
    g.glue(0, 3, 0, (1, 2, 3, 0))
    state = BoundaryTorusState((1, 0), (2, 1), ((0, 0), (0, 1), (0, 3)), ((0, 0), (0, 2), (0, 3)))
    return LayeredSolidTorus(g, state)


def _check_pq(p: int, q: int, min_p: int) -> None:
    if not (0 < q < p) or gcd(p, q) != 1 or p < min_p:
        raise ValueError(f"need coprime 0 < q < p with p >= {min_p}, got ({p}, {q})")


def flip_weights(p: int, q: int) -> list[int]:
    """Weights of the edges to flip, starting from the base weights (1, 2, 3).

    The two smaller boundary weights of the target are ``min(q, p - q)`` and
    ``max(q, p - q)``; running the subtractive Euclidean algorithm backwards
    to ``(1, 2)`` lists the flips.
    """
    x, y = sorted((q, p - q))
    steps = []
    while (x, y) != (1, 2):
        if y - x < x:
            # came from (y - x, x) by flipping its smaller edge
            steps.append(y - x)
            x, y = y - x, x
        else:
            # came from (x, y - x) by flipping its larger edge
            steps.append(y - x)
            x, y = x, y - x
        assert 0 < x < y, (p, q)
    return steps[::-1]


def _edge_with_weight(state: BoundaryTorusState, w: int) -> Slope:
    hits = [v for v in (state.a, state.b, state.c) if _weight(v) == w]
    assert len(hits) == 1, (state, w)
    return vec_slope(hits[0])


def build_layered_solid_torus(p: int, q: int) -> LayeredSolidTorus:
    """Layered solid torus with boundary edge weights ``(min(q, p-q), max(q, p-q), p)``.

    ``sum(cf(p/q)) - 2`` tetrahedra.  In the boundary frame sending the
    weight ``p``, ``p - q`` and ``q`` edges to slopes ``0``, ``1`` and ``inf``
    the meridian has slope ``p/q``.
    """
    _check_pq(p, q, 3)
    lst = _base_solid_torus()
    lst.q = q
    for w in flip_weights(p, q):
        lst.state = layer_tetrahedron(lst.table, lst.state, _edge_with_weight(lst.state, w))
    assert sorted(lst.weights()) == sorted((q, p - q, p))
    return lst


# Closed 2-tetrahedron tables for L(2,1) and L(3,1): the first connected,
# closed, orientable manifold tables with H1 = Z/2 and Z/3 found by an
# exhaustive search over 2-tetrahedron face pairings (scripts/small_lens_search.py).
# Among closed manifolds with 2-tetrahedron triangulations these homology
# groups occur only for RP^3 and L(3,1); here they are certified by homology.
_SMALL_LENS = {
    2: "tet 0: 0(1023) 0(1023) 1(1203) 1(3021)\ntet 1: 0(2013) 0(1320) 1(2031) 1(1302)\n",
    3: "tet 0: 0(1023) 0(1023) 1(2301) 1(2301)\ntet 1: 0(2301) 0(2301) 1(1230) 1(3012)\n",
}


def build_lens(p: int, q: int) -> GluingTable:
    """Closed layered triangulation of ``L(p, q)``.

    For ``p >= 4``: layer all flips but the last, then fold the boundary torus
    onto itself across the edge the last flip would remove, identifying the
    two boundary triangles.  This uses ``sum(cf(p/q)) - 3`` tetrahedra.
    ``p = 2, 3`` use fixed two-tetrahedron tables.
    """
    if p in (2, 3):
        _check_pq(p, q, 2)
        return GluingTable.from_text(_SMALL_LENS[p])
    _check_pq(p, q, 4)
    steps = flip_weights(p, q)
    lst = _base_solid_torus()
    for w in steps[:-1]:
        lst.state = layer_tetrahedron(lst.table, lst.state, _edge_with_weight(lst.state, w))
    s = lst.state.relabel(_edge_with_weight(lst.state, steps[-1]))
    glue_corners(lst.table, s.plus, s.minus)
    return lst.table


# ---------------------------------------------------------------------------
# T^2 x I and Sol manifolds

# Two prisms (triangle x interval) over the boundary triangles, each cut into
# three tetrahedra by the staircase diagonals running from a lower-index
# bottom corner to a higher-index top corner.  Because every side square gets
# its diagonal by that same rule, the squares of the two prisms match up.
_PRISMS = {
    "X1": ("P0", "P1", "P2", "P2'"),
    "X2": ("P0", "P1", "P1'", "P2'"),
    "X3": ("P0", "P0'", "P1'", "P2'"),
    "Y1": ("Q0", "Q1", "Q2", "Q2'"),
    "Y2": ("Q0", "Q1", "Q1'", "Q2'"),
    "Y3": ("Q0", "Q0'", "Q1'", "Q2'"),
}

# (tet, face labels) pairs glued with matching label order.
_BLOCK_GLUINGS = [
    # inside each prism
    (("X1", ("P0", "P1", "P2'")), ("X2", ("P0", "P1", "P2'"))),
    (("X2", ("P0", "P1'", "P2'")), ("X3", ("P0", "P1'", "P2'"))),
    (("Y1", ("Q0", "Q1", "Q2'")), ("Y2", ("Q0", "Q1", "Q2'"))),
    (("Y2", ("Q0", "Q1'", "Q2'")), ("Y3", ("Q0", "Q1'", "Q2'"))),
    # side squares over edge a (P0P1 = Q1Q2)
    (("X2", ("P0", "P1", "P1'")), ("Y1", ("Q1", "Q2", "Q2'"))),
    (("X3", ("P0", "P0'", "P1'")), ("Y2", ("Q1", "Q1'", "Q2'"))),
    # edge b (P1P2 = Q0Q1)
    (("X1", ("P1", "P2", "P2'")), ("Y2", ("Q0", "Q1", "Q1'"))),
    (("X2", ("P1", "P1'", "P2'")), ("Y3", ("Q0", "Q0'", "Q1'"))),
    # edge c (P0P2 = Q0Q2)
    (("X1", ("P0", "P2", "P2'")), ("Y1", ("Q0", "Q2", "Q2'"))),
    (("X3", ("P0", "P0'", "P2'")), ("Y3", ("Q0", "Q0'", "Q2'"))),
]


@dataclass
class TorusProduct:
    table: GluingTable
    bottom: BoundaryTorusState
    top: BoundaryTorusState


def _vectors_for(t: FareyTriangle) -> tuple[Vec, Vec]:
    """Primitive ``a``, ``b`` with ``a``, ``b``, ``a + b`` spanning the slopes of ``t``."""
    s1, s2, s3 = t.vertices
    a, b = (s1.p, s1.q), (s2.p, s2.q)
    # s3 = e*a + d*b with e, d = +-1
    dab = det(s1, s2)
    e, d = det(s3, s2) * dab, det(s1, s3) * dab
    b = (e * d * b[0], e * d * b[1])
    assert vec_slope(_add(a, b)) == s3
    return a, b


def product_block(t: FareyTriangle) -> TorusProduct:
    """Six-tetrahedron triangulation of T^2 x I with both boundaries equal to ``t``."""
    g = GluingTable()
    index = {name: g.add_tet() for name in _PRISMS}

    def corners(name, labels):
        verts = _PRISMS[name]
        return [(index[name], verts.index(lab)) for lab in labels]

    for (n1, l1), (n2, l2) in _BLOCK_GLUINGS:
        glue_corners(g, corners(n1, l1), corners(n2, l2))
    a, b = _vectors_for(t)
    bottom = BoundaryTorusState(a, b, tuple(corners("X1", ("P0", "P1", "P2"))), tuple(corners("Y1", ("Q0", "Q1", "Q2"))))
    top = BoundaryTorusState(a, b, tuple(corners("X3", ("P0'", "P1'", "P2'"))), tuple(corners("Y3", ("Q0'", "Q1'", "Q2'"))))
    return TorusProduct(g, bottom, top)


def build_torus_product(path: Sequence[FareyTriangle]) -> TorusProduct:
    """T^2 x I with bottom triple ``path[0]`` and top triple ``path[-1]``.

    ``6 + len(path) - 1`` tetrahedra: the product block, then one layer per
    step of the path.
    """
    if not path:
        raise ValueError("empty path")
    for u, v in zip(path, path[1:]):
        if len(set(u) & set(v)) != 2:
            raise ValueError(f"{u} and {v} are not adjacent in the Farey tree")
    prod = product_block(path[0])
    prod.top = layer_along(prod.table, prod.top, path)
    return prod


def _match_corners(images: Sequence[Vec], tops) -> list:
    """Top corner triples whose relative positions equal ``images``."""
    found = []
    for k, pos in enumerate(tops):
        for order in permutations(pos):
            base = pos[order[0]]
            if all(_sub(pos[order[i]], base) == _sub(images[i], images[0]) for i in (1, 2)):
                found.append((k, order))
    return found


def build_sol(A: IntMatrix) -> GluingTable:
    """Closed triangulation of the torus bundle with monodromy ``A``.

    Finds a tree vertex ``t`` on the axis of ``A``, builds T^2 x I along the
    geodesic from ``t`` to ``A t`` (``6 + translation length`` tetrahedra)
    and glues each bottom triangle to the top triangle that ``A`` carries it
    onto.
    """
    kind = classify(A).kind
    if kind != "Anosov":
        raise ValueError(f"{A} is {kind}, not Anosov")
    t = axis_vertex(A)
    path = tree_path(t, act_triangle(A, t))
    prod = build_torus_product(path)
    bottom_pos = prod.bottom.positions()
    top_pos = prod.top.positions()
    used = set()
    for tri, pos in zip((prod.bottom.plus, prod.bottom.minus), bottom_pos):
        images = [_apply(A, pos[c]) for c in tri]
        found = _match_corners(images, top_pos)
        assert len(found) == 1, (A, found)
        k, order = found[0]
        assert k not in used
        used.add(k)
        glue_corners(prod.table, tri, order)
    return prod.table
