"""The Farey graph, its dual tree, and the action of SL(2, Z) on both.

Slopes are points of Q u {inf}.  A Farey triangle is a triple of pairwise
unimodular slopes; triangles are the vertices of the Farey tree, two being
adjacent when they share an edge.  All navigation uses the circular order
of slopes on the boundary circle, computed from signs of 2x2 determinants.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

from .exact import QuadraticSurd, as_fraction, cf_of_surd, periodic_sum
from .parsing import parse_ratio, parse_triangle
from .psl2z import (
    IntMatrix,
    classify,
    cyclic_reduce,
    fixed_slopes,
    matrix_to_word,
    primitive_root,
    word_length,
)


# ---------------------------------------------------------------------------
# slopes

@dataclass(frozen=True, init=False, order=False)
class Slope:
    """Reduced ``p/q`` with ``q >= 0``; infinity is stored as ``1/0``."""

    p: int
    q: int

    def __init__(self, p: int, q: int = 1):
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> Slope:
        return cls(*parse_ratio(text))

    @classmethod
    def of(cls, x) -> Slope:
        if isinstance(x, Slope):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, tuple):
            return cls(*x)
        f = as_fraction(x)
        return cls(f.numerator, f.denominator)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def value(self) -> Fraction:
        if self.q == 0:
            raise ValueError("infinity has no rational value")
        return Fraction(self.p, self.q)

    def key(self):
        """Sort key placing infinity after every rational."""
        return (1, 0) if self.q == 0 else (0, Fraction(self.p, self.q))

    def __str__(self) -> str:
        return "inf" if self.q == 0 else f"{self.p}/{self.q}"

    def __repr__(self) -> str:
        return f"Slope({self})"


INF = Slope(1, 0)
ZERO = Slope(0, 1)
ONE = Slope(1, 1)


def det(x: Slope, y: Slope) -> int:
    return x.p * y.q - x.q * y.p


def _less(x: Slope, y: Slope) -> bool:
    """``x < y`` in the order of :meth:`Slope.key`, without building fractions."""
    if x.q == 0:
        return False
    if y.q == 0:
        return True
    return x.p * y.q < y.p * x.q


def is_farey_edge(a: Slope, b: Slope) -> bool:
    return abs(det(a, b)) == 1


def _sgn(n) -> int:
    return (n > 0) - (n < 0)


def orient(x: Slope, y: Slope, z: Slope) -> int:
    """Circular orientation of three slopes.

    +1 when x, y, z occur in increasing order around Q u {inf} (with
    infinity after everything), -1 for the reverse, 0 if two coincide.
    The sign does not depend on the choice of primitive vectors.
    """
    return _sgn(det(x, y)) * _sgn(det(y, z)) * _sgn(det(z, x))


# Circular orientation with one point a real number (rational or surd).

Real = Union[Fraction, QuadraticSurd]


def _det_real(s: Slope, r: Real) -> int:
    """Sign of det((p, q), (r, 1)) = p - q r."""
    if s.q == 0:
        return 1
    if isinstance(r, QuadraticSurd):
        return -r.compare(Fraction(s.p, s.q))
    return _sgn(s.p - s.q * r)


def _orient_real(x: Slope, y: Slope, r: Real) -> int:
    return _sgn(det(x, y)) * _det_real(y, r) * -_det_real(x, r)


# ---------------------------------------------------------------------------
# triangles

@dataclass(frozen=True, init=False)
class FareyTriangle:
    """Unordered Farey triangle; ``vertices`` sorted with infinity last."""

    vertices: tuple[Slope, Slope, Slope]

    def __init__(self, *slopes):
        if len(slopes) == 1:
            slopes = tuple(slopes[0])
        vs = tuple(sorted((Slope.of(s) for s in slopes), key=Slope.key))
        if len(vs) != 3 or len(set(vs)) != 3:
            raise ValueError(f"need three distinct slopes, got {slopes}")
        for i in range(3):
            for j in range(i + 1, 3):
                if not is_farey_edge(vs[i], vs[j]):
                    raise ValueError(f"{vs[i]} and {vs[j]} are not Farey neighbours")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def _trusted(cls, a: Slope, b: Slope, c: Slope) -> FareyTriangle:
        """Skip validation; ``a < b`` already sorted and the three span a triangle."""
        if _less(c, a):
            vs = (c, a, b)
        elif _less(c, b):
            vs = (a, c, b)
        else:
            vs = (a, b, c)
        t = object.__new__(cls)
        object.__setattr__(t, "vertices", vs)
        return t

    @classmethod
    def parse(cls, text: str) -> FareyTriangle:
        return cls(*(Slope(p, q) for p, q in parse_triangle(text)))

    def __contains__(self, s: Slope) -> bool:
        return s in self.vertices

    def __iter__(self):
        return iter(self.vertices)

    def opposite_edges(self):
        """Yield ``(a, b, c)`` for each edge ``{a, b}`` with opposite vertex ``c``."""
        v = self.vertices
        for k in range(3):
            yield v[(k + 1) % 3], v[(k + 2) % 3], v[k]

    def ordered(self) -> tuple[Slope, Slope, Slope]:
        """Vertices in positive circular order, starting from the smallest."""
        a, b, c = self.vertices
        return (a, b, c) if orient(a, b, c) > 0 else (a, c, b)

    def __str__(self) -> str:
        return "{" + ", ".join(str(s) for s in self.vertices) + "}"

    def __repr__(self) -> str:
        return f"FareyTriangle({self})"


BASE = FareyTriangle(ZERO, ONE, INF)


def third_vertex(a: Slope, b: Slope, avoid: Slope) -> Slope:
    """The slope completing edge ``{a, b}`` to a triangle, other than ``avoid``."""
    plus = Slope(a.p + b.p, a.q + b.q)
    if plus != avoid:
        return plus
    return Slope(a.p - b.p, a.q - b.q)


def flip(t: FareyTriangle, c: Slope) -> FareyTriangle:
    """Neighbour of ``t`` across the edge opposite ``c``."""
    if c not in t:
        raise ValueError(f"{c} is not a vertex of {t}")
    a, b = (v for v in t if v != c)
    return FareyTriangle._trusted(a, b, third_vertex(a, b, c))


def neighbors(t: FareyTriangle) -> list[FareyTriangle]:
    """The three triangles sharing an edge with ``t``."""
    out = []
    for a, b, c in t.opposite_edges():
        if _less(b, a):
            a, b = b, a
        out.append(FareyTriangle._trusted(a, b, third_vertex(a, b, c)))
    return out


def _step_toward(t: FareyTriangle, targets: Iterable[Slope]) -> Slope:
    """Vertex of ``t`` to flip away from to get closer to ``targets``.

    Returns the unique ``c`` whose opposite edge separates ``c`` from every
    target; ``targets`` must be nonempty and avoid the vertices of ``t``.
    """
    targets = list(targets)
    hits = []
    for a, b, c in t.opposite_edges():
        side = orient(a, b, c)
        if all(orient(a, b, x) == -side for x in targets):
            hits.append(c)
    assert len(hits) == 1, (t, targets, hits)
    return hits[0]


def tree_path(t1: FareyTriangle, t2: FareyTriangle) -> list[FareyTriangle]:
    """Geodesic in the Farey tree from ``t1`` to ``t2``, both ends included."""
    path = [t1]
    cur = t1
    while cur != t2:
        c = _step_toward(cur, [x for x in t2 if x not in cur])
        cur = flip(cur, c)
        path.append(cur)
    return path


def tree_distance(t1: FareyTriangle, t2: FareyTriangle) -> int:
    return len(tree_path(t1, t2)) - 1


def bfs_distances(root: FareyTriangle, radius: int) -> dict[FareyTriangle, int]:
    """Plain breadth-first search over :func:`neighbors`; used as an oracle."""
    dist = {root: 0}
    queue = deque([root])
    while queue:
        t = queue.popleft()
        if dist[t] == radius:
            continue
        for u in neighbors(t):
            if u not in dist:
                dist[u] = dist[t] + 1
                queue.append(u)
    return dist


# ---------------------------------------------------------------------------
# lines

@dataclass(frozen=True)
class FareyLine:
    """All tree vertices whose triangles contain ``center``."""

    center: Slope


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def matrix_sending_inf_to(s: Slope) -> IntMatrix:
    """Some ``M`` in SL(2, Z) with ``M . inf = s``."""
    g, x, y = _ext_gcd(s.p, s.q)
    assert abs(g) == 1
    # p*x + q*y = g, so [[p, -y g], [q, x g]] has determinant g^2 = 1
    return IntMatrix(s.p, -y * g, s.q, x * g)


def line_distance(l1: FareyLine, l2: FareyLine) -> int:
    """Tree distance between the lines around two distinct slopes.

    Moves the first centre to infinity, starts from the triangle
    ``{n, n+1, inf}`` under the second centre and walks until a triangle
    containing it is reached.
    """
    s1, s2 = l1.center, l2.center
    if s1 == s2:
        raise ValueError("lines with equal centres have no distance")
    if is_farey_edge(s1, s2):
        return 0
    r = act(matrix_sending_inf_to(s1).inverse(), s2)
    n = r.p // r.q
    cur = FareyTriangle(Slope(n), Slope(n + 1), INF)
    steps = 0
    while r not in cur:
        cur = flip(cur, _step_toward(cur, [r]))
        steps += 1
    return steps


# ---------------------------------------------------------------------------
# cutting sequences

@dataclass(frozen=True)
class CuttingSequence:
    runs: tuple[tuple[str, int], ...]

    def exponents(self) -> list[int]:
        return [n for _, n in self.runs]

    def __str__(self) -> str:
        return " ".join(f"{letter}^{n}" for letter, n in self.runs)


def cutting_sequence(r, max_runs: int = 30) -> CuttingSequence:
    """L/R itinerary of a geodesic from the imaginary axis to ``r > 0``.

    The run lengths are the continued fraction digits of ``r``; when ``r``
    lies in (0, 1) the leading digit 0 contributes no run, so the sequence
    starts with ``R``.  For rational ``r`` the final triangle repeats the
    previous letter.  Surds are truncated after ``max_runs`` runs.
    """
    if max_runs < 1:
        raise ValueError("max_runs must be positive")
    if not isinstance(r, QuadraticSurd):
        r = as_fraction(r)
        positive = r > 0
        target = Slope(r.numerator, r.denominator)
    else:
        positive = r.compare(0) > 0
        target = None
    if not positive:
        raise ValueError(f"cutting sequences need a positive endpoint, got {r}")

    runs: list[list] = []
    left, right = INF, ZERO
    while True:
        m = Slope(left.p + right.p, left.q + right.q)
        if target is not None and m == target:
            letter = runs[-1][0] if runs else "L"
        elif _orient_real(left, m, r) != orient(left, m, right):
            letter = "L"
        else:
            letter = "R"
        if runs and runs[-1][0] == letter:
            runs[-1][1] += 1
        elif len(runs) == max_runs:
            break
        else:
            runs.append([letter, 1])
        if target is not None and m == target:
            break
        if letter == "L":
            right = m
        else:
            left = m
    return CuttingSequence(tuple((a, n) for a, n in runs))


# ---------------------------------------------------------------------------
# the SL(2, Z) / GL(2, Z) action

def _require_unimodular(A: IntMatrix) -> None:
    if A.det() not in (1, -1):
        raise ValueError(f"{A} has determinant {A.det()}, expected +1 or -1")


def act(A: IntMatrix, s: Slope) -> Slope:
    _require_unimodular(A)
    return Slope(A.a * s.p + A.b * s.q, A.c * s.p + A.d * s.q)


def act_triangle(A: IntMatrix, t: FareyTriangle) -> FareyTriangle:
    _require_unimodular(A)
    return FareyTriangle(*(act(A, s) for s in t))


def triangle_map(t1, t2) -> IntMatrix:
    """The matrix sending ordered triple ``t1`` to ordered triple ``t2``.

    With primitive vectors, ``c = eps*a + delta*b`` in each triple; taking
    ``a1 -> a2`` and ``b1 -> tau*b2`` with ``tau`` the product of the four
    signs makes ``c1`` land on ``+-c2``.  Unique up to global sign.
    """
    a1, b1, c1 = (Slope.of(s) for s in t1)
    a2, b2, c2 = (Slope.of(s) for s in t2)
    for x, y, z in ((a1, b1, c1), (a2, b2, c2)):
        if not (is_farey_edge(x, y) and is_farey_edge(y, z) and is_farey_edge(x, z)):
            raise ValueError(f"({x}, {y}, {z}) is not a Farey triangle")

    def coeffs(a, b, c):
        d = det(a, b)
        return det(c, b) * d, det(a, c) * d  # d = +-1 so dividing is multiplying

    e1, d1 = coeffs(a1, b1, c1)
    e2, d2 = coeffs(a2, b2, c2)
    assert {abs(e1), abs(d1), abs(e2), abs(d2)} == {1}
    tau = e1 * e2 * d1 * d2
    target = IntMatrix(a2.p, tau * b2.p, a2.q, tau * b2.q)
    source = IntMatrix(a1.p, b1.p, a1.q, b1.q)
    M = target @ source.inverse()
    assert act(M, a1) == a2 and act(M, b1) == b2 and act(M, c1) == c2
    return M


# ---------------------------------------------------------------------------
# translation lengths

METHODS = ("word", "axis_oracle", "fixed_point_cf")


def _require_nontrivial(A: IntMatrix) -> None:
    if A.det() != 1:
        raise ValueError(f"{A} has determinant {A.det()}, expected 1")
    if A.psl_normal() == IntMatrix.identity():
        raise ValueError("the identity has no axis")


def translation_length_word(A: IntMatrix) -> int:
    _require_nontrivial(A)
    if classify(A).kind == "Elliptic":
        raise ValueError(f"{A} is elliptic; the word method needs an axis")
    ell = word_length(A)
    assert ell % 2 == 0, (A, ell)
    return ell // 2


def translation_length_axis(A: IntMatrix, v: FareyTriangle = BASE) -> int:
    """min of ``d(x, A x)`` over the tree geodesic from ``v`` to ``A v``.

    Elliptic elements fix a point of the tree (possibly an edge midpoint,
    which the vertex-only minimum would report as 1) and get 0.
    """
    _require_nontrivial(A)
    if classify(A).kind == "Elliptic":
        return 0
    return min(tree_distance(x, act_triangle(A, x)) for x in tree_path(v, act_triangle(A, v)))


def axis_vertex(A: IntMatrix, v: FareyTriangle = BASE) -> FareyTriangle:
    """First vertex on the geodesic from ``v`` to ``A v`` minimizing ``d(x, A x)``."""
    best, best_d = None, None
    for x in tree_path(v, act_triangle(A, v)):
        d = tree_distance(x, act_triangle(A, x))
        if best_d is None or d < best_d:
            best, best_d = x, d
    return best


def translation_length_cf(A: IntMatrix) -> int:
    if classify(A).kind != "Anosov":
        raise ValueError(f"{A} is not Anosov")
    _, n = primitive_root(cyclic_reduce(matrix_to_word(A)))
    u, _ = fixed_slopes(A)
    return n * periodic_sum(cf_of_surd(u))


def translation_length(A: IntMatrix, method: str = "word") -> int:
    if method == "word":
        return translation_length_word(A)
    if method == "axis_oracle":
        return translation_length_axis(A)
    if method == "fixed_point_cf":
        return translation_length_cf(A)
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


# ---------------------------------------------------------------------------
# Anosov maps between triangulations

def connecting_anosov(t1: FareyTriangle, t2: FareyTriangle) -> IntMatrix:
    """An Anosov ``A`` with ``A t1 = t2`` whose axis passes through both.

    Label ``t1 = (a1, b1, c1)`` and ``t2 = (a2, b2, c2)`` so that ``b1 c1``
    and ``b2 c2`` are the edges facing each other along the tree geodesic and
    both triples run in positive circular order.  If ``b2 = c1`` the roles of
    ``b`` and ``c`` are exchanged in both triples (this reverses both orders,
    so orientation is still preserved).  Then ``a1 -> c2``, ``b1 -> a2``,
    ``c1 -> b2``.
    """
    path = tree_path(t1, t2)
    if len(path) < 3:
        raise ValueError(f"{t1} and {t2} are at distance {len(path) - 1}; need at least 2")

    def label(t, nxt):
        a = next(v for v in t if v not in nxt)
        b, c = (v for v in t if v != a)
        if orient(a, b, c) < 0:
            b, c = c, b
        return a, b, c

    a1, b1, c1 = label(t1, path[1])
    a2, b2, c2 = label(t2, path[-2])
    if b2 == c1:
        b1, c1 = c1, b1
        b2, c2 = c2, b2
    A = triangle_map((a1, b1, c1), (c2, a2, b2))
    assert A.det() == 1 and abs(A.trace()) > 2, A
    return A
