"""Integer homology of a gluing table from its cellular chain complex.

Cells are the vertex, edge, face and tetrahedron classes of the quotient.
Each tetrahedron carries the orientation of ``[0, 1, 2, 3]``; a face class is
oriented by its representative side with vertices in increasing order, and
an edge class by its union-find representative.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .gluing import GluingTable, Skeleton, perm_sign, skeleton
from .snf import rank_and_torsion


@dataclass
class HomologyProfile:
    ranks: list[int]  # b0..b3
    torsion: list[list[int]] = field(default_factory=lambda: [[], [], [], []])

    def group(self, k: int) -> str:
        parts = ["Z"] * self.ranks[k] + [f"Z/{d}" for d in self.torsion[k]]
        return " + ".join(parts) if parts else "0"

    @property
    def h1(self) -> str:
        return self.group(1)

    def to_dict(self) -> dict:
        return {
            "ranks": [str(b) for b in self.ranks],
            "torsion": [[str(d) for d in ts] for ts in self.torsion],
            "groups": [self.group(k) for k in range(4)],
        }


def _sorted_face(f: int) -> list[int]:
    return [v for v in range(4) if v != f]


def _face_side_sign(g: GluingTable, sk: Skeleton, t: int, f: int) -> int:
    """Sign of side ``(t, f)`` (increasing vertex order) against its class orientation."""
    k = sk.face_of[(t, f)]
    gl = g.tets[t][f]
    if gl is None:
        return 1
    u, perm = gl
    g_face = perm[f]
    # the representative side is the lexicographically smaller of the two
    if (t, f) <= (u, g_face):
        return 1
    # image of our increasing vertex list on the representative side
    images = [perm[v] for v in _sorted_face(f)]
    return perm_sign(images)


def edge_chain(sk: Skeleton, t: int, i: int, j: int) -> dict[int, int]:
    """The directed tet edge ``i -> j`` of tet ``t`` as a 1-chain."""
    a, b = min(i, j), max(i, j)
    cls, sign = sk.edge_of[(t, a, b)]
    return {cls: sign if i < j else -sign}


def boundary_matrices(g: GluingTable, sk: Optional[Skeleton] = None):
    """Sparse rows of d1, d2, d3 (row per cell in the higher degree)."""
    sk = sk or skeleton(g)
    # d1: edge class -> vertex chain
    d1 = [dict() for _ in range(sk.n_edges)]
    seen = set()
    for (t, i, j), (cls, sign) in sk.edge_of.items():
        if cls in seen or sign != 1:
            continue
        seen.add(cls)
        row = d1[cls]
        head, tail = sk.vertex_of[(t, j)], sk.vertex_of[(t, i)]
        row[head] = row.get(head, 0) + 1
        row[tail] = row.get(tail, 0) - 1
        if row[head] == 0:
            row.pop(head)
            row.pop(tail, None)
    # d2: face class -> edge chain, from its representative side
    d2 = [dict() for _ in range(sk.n_faces)]
    done = set()
    for (t, f), cls in sorted(sk.face_of.items()):
        if cls in done:
            continue
        done.add(cls)
        w0, w1, w2 = _sorted_face(f)
        row = d2[cls]
        for (i, j), coeff in (((w1, w2), 1), ((w0, w2), -1), ((w0, w1), 1)):
            for e, s in edge_chain(sk, t, i, j).items():
                row[e] = row.get(e, 0) + coeff * s
        for e in [e for e, v in row.items() if v == 0]:
            del row[e]
    # d3: tet -> face chain
    d3 = []
    for t in range(len(g)):
        row: dict[int, int] = {}
        for f in range(4):
            cls = sk.face_of[(t, f)]
            s = (-1) ** f * _face_side_sign(g, sk, t, f)
            row[cls] = row.get(cls, 0) + s
        d3.append({k: v for k, v in row.items() if v})
    return d1, d2, d3


def _compose_is_zero(upper: list[dict], lower: list[dict]) -> bool:
    for row in upper:
        acc: dict[int, int] = {}
        for k, c in row.items():
            for j, v in lower[k].items():
                acc[j] = acc.get(j, 0) + c * v
        if any(acc.values()):
            return False
    return True


def homology(g: GluingTable, extra_relations: Iterable[dict[int, int]] = ()) -> HomologyProfile:
    """Homology groups H0..H3.

    ``extra_relations`` are 1-chains (``{edge class: coefficient}``) treated as
    boundaries of additional 2-cells; used to cap off boundary curves.
    """
    sk = skeleton(g)
    if not sk.edges_ok:
        raise ValueError("an edge is identified with itself in reverse")
    d1, d2, d3 = boundary_matrices(g, sk)
    assert _compose_is_zero(d2, d1), "d1 d2 != 0"
    assert _compose_is_zero(d3, d2), "d2 d3 != 0"
    d2 = d2 + [dict(r) for r in extra_relations]
    r1, t0 = rank_and_torsion(d1)
    r2, t1 = rank_and_torsion(d2)
    r3, t2 = rank_and_torsion(d3)
    n0, n1, n2, n3 = sk.n_vertices, sk.n_edges, len(d2), len(g)
    ranks = [n0 - r1, n1 - r1 - r2, n2 - r2 - r3, n3 - r3]
    return HomologyProfile(ranks, [t0, t1, t2, []])
