"""Gluing tables: tetrahedra with face pairings, plus structural validation.

Face ``f`` of a tetrahedron is the face opposite vertex ``f``.  A gluing
``(t, f) -> (u, sigma)`` identifies face ``f`` of ``t`` with face ``sigma[f]``
of ``u``, vertex ``v`` of ``t`` going to vertex ``sigma[v]`` of ``u``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

Perm = tuple[int, int, int, int]
Gluing = Optional[tuple[int, Perm]]

IDENTITY: Perm = (0, 1, 2, 3)


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * 4
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_compose(p: Perm, q: Perm) -> Perm:
    """``p after q``."""
    return tuple(p[q[i]] for i in range(4))


def perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def perm_from_string(s: str) -> Perm:
    if len(s) != 4 or sorted(s) != list("0123"):
        raise ValueError(f"{s!r} is not a permutation of 0123")
    return tuple(int(ch) for ch in s)


def perm_to_string(p: Perm) -> str:
    return "".join(str(x) for x in p)


class GluingError(ValueError):
    pass


class GluingTable:
    """A list of tetrahedra, each with four faces that are boundary or glued."""

    def __init__(self, size: int = 0):
        self.tets: list[list[Gluing]] = [[None] * 4 for _ in range(size)]

    def __len__(self) -> int:
        return len(self.tets)

    def add_tet(self) -> int:
        self.tets.append([None] * 4)
        return len(self.tets) - 1

    def glue(self, t: int, f: int, u: int, perm) -> None:
        perm = tuple(perm)
        g = perm[f]
        if (t, f) == (u, g):
            raise GluingError(f"face {f} of tet {t} cannot be glued to itself")
        if self.tets[t][f] is not None or self.tets[u][g] is not None:
            raise GluingError(f"face ({t}, {f}) or ({u}, {g}) is already glued")
        self.tets[t][f] = (u, perm)
        self.tets[u][g] = (t, perm_inverse(perm))

    def unglue(self, t: int, f: int) -> None:
        u, perm = self.tets[t][f]
        self.tets[u][perm[f]] = None
        self.tets[t][f] = None

    def copy(self) -> GluingTable:
        g = GluingTable()
        g.tets = [list(faces) for faces in self.tets]
        return g

    def boundary_faces(self) -> list[tuple[int, int]]:
        return [(t, f) for t, faces in enumerate(self.tets) for f in range(4) if faces[f] is None]

    def check_involution(self) -> None:
        for t, faces in enumerate(self.tets):
            for f, gl in enumerate(faces):
                if gl is None:
                    continue
                u, perm = gl
                if sorted(perm) != [0, 1, 2, 3]:
                    raise GluingError(f"tet {t} face {f}: {perm} is not a permutation")
                if not 0 <= u < len(self.tets):
                    raise GluingError(f"tet {t} face {f}: target {u} out of range")
                if (u, perm[f]) == (t, f):
                    raise GluingError(f"tet {t} face {f} is glued to itself")
                back = self.tets[u][perm[f]]
                if back != (t, perm_inverse(perm)):
                    raise GluingError(f"tet {t} face {f} -> ({u}, {perm_to_string(perm)}) is not mirrored")

    def __eq__(self, other) -> bool:
        return isinstance(other, GluingTable) and self.tets == other.tets

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        lines = []
        for t, faces in enumerate(self.tets):
            cells = ["bdry" if gl is None else f"{gl[0]}({perm_to_string(gl[1])})" for gl in faces]
            lines.append(f"tet {t}: " + " ".join(cells))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> GluingTable:
        rows = {}
        cell = re.compile(r"^(?:bdry|(\d+)\(([0-3]{4})\))$")
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = re.match(r"^tet\s+(\d+)\s*:\s*(.*)$", line)
            if not m:
                raise GluingError(f"line {lineno}: expected 'tet <i>: ...', got {raw!r}")
            t = int(m.group(1))
            cells = m.group(2).split()
            if len(cells) != 4:
                raise GluingError(f"line {lineno}: expected 4 faces, got {len(cells)}")
            faces = []
            for c in cells:
                cm = cell.match(c)
                if not cm:
                    raise GluingError(f"line {lineno}: bad face entry {c!r}")
                faces.append(None if cm.group(1) is None else (int(cm.group(1)), perm_from_string(cm.group(2))))
            if t in rows:
                raise GluingError(f"line {lineno}: tet {t} listed twice")
            rows[t] = faces
        if sorted(rows) != list(range(len(rows))):
            raise GluingError("tetrahedra must be numbered 0..n-1")
        g = cls()
        g.tets = [rows[t] for t in range(len(rows))]
        g.check_involution()
        return g

    def to_json(self) -> str:
        data = {
            "tetrahedra": [
                [None if gl is None else {"tet": str(gl[0]), "perm": perm_to_string(gl[1])} for gl in faces]
                for faces in self.tets
            ]
        }
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> GluingTable:
        data = json.loads(text)
        g = cls()
        for faces in data["tetrahedra"]:
            if len(faces) != 4:
                raise GluingError("each tetrahedron needs 4 faces")
            g.tets.append([None if x is None else (int(x["tet"]), perm_from_string(x["perm"])) for x in faces])
        g.check_involution()
        return g


# ---------------------------------------------------------------------------
# union-find helpers

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller item as root so representatives are canonical
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


class _ParityUnionFind:
    """Union-find where each item carries a parity relative to its root."""

    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.parity = {x: 0 for x in items}
        self.consistent = True

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # recompute parities along the path from the top down
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return root

    def relative(self, x) -> int:
        self.find(x)
        return self.parity[x]

    def union(self, x, y, flip: int):
        rx, ry = self.find(x), self.find(y)
        px, py = self.parity[x], self.parity[y]
        if rx == ry:
            if px ^ py != flip:
                self.consistent = False
            return
        if ry < rx:
            rx, ry, px, py = ry, rx, py, px
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ flip


# ---------------------------------------------------------------------------
# cell structure

EDGES = list(combinations(range(4), 2))


@dataclass
class Skeleton:
    """Vertex, edge and face classes of the quotient complex."""

    vertex_of: dict  # (t, v) -> class index
    edge_of: dict  # (t, i, j) with i < j -> (class index, sign relative to rep)
    face_of: dict  # (t, f) -> class index
    n_vertices: int
    n_edges: int
    n_faces: int
    edges_ok: bool


def skeleton(g: GluingTable) -> Skeleton:
    n = len(g)
    verts = _UnionFind([(t, v) for t in range(n) for v in range(4)])
    edges = _ParityUnionFind([(t, i, j) for t in range(n) for i, j in EDGES])
    for t, faces in enumerate(g.tets):
        for f, gl in enumerate(faces):
            if gl is None:
                continue
            u, perm = gl
            if (u, perm[f]) < (t, f):
                continue  # each pair once
            for v in range(4):
                if v != f:
                    verts.union((t, v), (u, perm[v]))
            for i, j in EDGES:
                if f in (i, j):
                    continue
                a, b = perm[i], perm[j]
                edges.union((t, i, j), (u, min(a, b), max(a, b)), int(a > b))

    vclasses = sorted(verts.classes())
    vindex = {r: k for k, r in enumerate(vclasses)}
    vertex_of = {x: vindex[verts.find(x)] for x in verts.parent}

    eroots = sorted({edges.find(x) for x in edges.parent})
    eindex = {r: k for k, r in enumerate(eroots)}
    edge_of = {}
    for x in edges.parent:
        r = edges.find(x)
        edge_of[x] = (eindex[r], -1 if edges.relative(x) else 1)

    face_of = {}
    k = 0
    for t, faces in enumerate(g.tets):
        for f, gl in enumerate(faces):
            if (t, f) in face_of:
                continue
            face_of[(t, f)] = k
            if gl is not None:
                u, perm = gl
                face_of[(u, perm[f])] = k
            k += 1
    return Skeleton(vertex_of, edge_of, face_of, len(vclasses), len(eroots), k, edges.consistent)


# ---------------------------------------------------------------------------
# validation

@dataclass
class BoundaryComponent:
    faces: int
    edges: int
    vertices: int

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces


@dataclass
class ValidationReport:
    tetrahedra: int
    closed: bool
    orientable: bool
    vertex_count: int
    edge_count: int
    face_count: int
    euler: int
    edges_ok: bool
    boundary: list[BoundaryComponent] = field(default_factory=list)
    vertex_links: list[int] = field(default_factory=list)  # Euler characteristic per vertex class

    @property
    def is_manifold(self) -> bool:
        """Every vertex link a sphere (interior) or disc (boundary vertex)."""
        return self.edges_ok and all(chi in (1, 2) for chi in self.vertex_links)

    def to_dict(self) -> dict:
        return {
            "tetrahedra": str(self.tetrahedra),
            "closed": self.closed,
            "orientable": self.orientable,
            "vertices": str(self.vertex_count),
            "edges": str(self.edge_count),
            "faces": str(self.face_count),
            "euler": str(self.euler),
            "edges_ok": self.edges_ok,
            "boundary": [
                {"faces": str(b.faces), "edges": str(b.edges), "vertices": str(b.vertices)} for b in self.boundary
            ],
            "vertex_links": [str(x) for x in self.vertex_links],
        }


def _orientable(g: GluingTable) -> bool:
    sign: dict[int, int] = {}
    for start in range(len(g)):
        if start in sign:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for f, gl in enumerate(g.tets[t]):
                if gl is None:
                    continue
                u, perm = gl
                # consistent orientations need an odd gluing between equal signs
                want = -sign[t] * perm_sign(perm)
                if u not in sign:
                    sign[u] = want
                    stack.append(u)
                elif sign[u] != want:
                    return False
    return True


def _vertex_links(g: GluingTable, sk: Skeleton) -> list[int]:
    n = len(g)
    # link vertices: ends (t, v, w) of tet edges at vertex v
    ends = _UnionFind([(t, v, w) for t in range(n) for v in range(4) for w in range(4) if v != w])
    link_edges = [0] * sk.n_vertices
    for t, faces in enumerate(g.tets):
        for f, gl in enumerate(faces):
            for v in range(4):
                if v == f:
                    continue
                cls = sk.vertex_of[(t, v)]
                if gl is None:
                    link_edges[cls] += 2  # counted as 2 halves
                    continue
                link_edges[cls] += 1
                u, perm = gl
                for w in range(4):
                    if w not in (v, f):
                        ends.union((t, v, w), (u, perm[v], perm[w]))
    link_verts = [0] * sk.n_vertices
    for root in ends.classes():
        t, v, _ = root
        link_verts[sk.vertex_of[(t, v)]] += 1
    link_faces = [0] * sk.n_vertices
    for (t, v), cls in sk.vertex_of.items():
        link_faces[cls] += 1
    return [link_verts[k] - link_edges[k] // 2 + link_faces[k] for k in range(sk.n_vertices)]


def _boundary_components(g: GluingTable, sk: Skeleton) -> list[BoundaryComponent]:
    bfaces = g.boundary_faces()
    if not bfaces:
        return []
    uf = _UnionFind(bfaces)
    by_edge: dict[int, list] = {}
    for t, f in bfaces:
        for i, j in EDGES:
            if f not in (i, j):
                by_edge.setdefault(sk.edge_of[(t, i, j)][0], []).append((t, f))
    for faces in by_edge.values():
        for x in faces[1:]:
            uf.union(faces[0], x)
    comps = []
    for members in sorted(uf.classes().values()):
        e_cls, v_cls = set(), set()
        for t, f in members:
            for i, j in EDGES:
                if f not in (i, j):
                    e_cls.add(sk.edge_of[(t, i, j)][0])
            for v in range(4):
                if v != f:
                    v_cls.add(sk.vertex_of[(t, v)])
        comps.append(BoundaryComponent(len(members), len(e_cls), len(v_cls)))
    return comps


def validate(g: GluingTable) -> ValidationReport:
    g.check_involution()
    sk = skeleton(g)
    return ValidationReport(
        tetrahedra=len(g),
        closed=not g.boundary_faces(),
        orientable=_orientable(g),
        vertex_count=sk.n_vertices,
        edge_count=sk.n_edges,
        face_count=sk.n_faces,
        euler=sk.n_vertices - sk.n_edges + sk.n_faces - len(g),
        edges_ok=sk.edges_ok,
        boundary=_boundary_components(g, sk),
        vertex_links=_vertex_links(g, sk),
    )
