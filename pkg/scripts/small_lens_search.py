"""Exhaustive search over closed 2-tetrahedron triangulations.

Enumerates every perfect matching of the 8 faces with every face
identification, keeps the connected closed orientable manifold tables, and
reports the first table found for each first homology group.  The tables shipped for
L(2,1) and L(3,1) in ``tricomplex.triangulate.layered`` come from this run.

    python3 scripts/small_lens_search.py
"""
from __future__ import annotations

from collections import Counter
from itertools import permutations, product

from tricomplex.triangulate.gluing import GluingError, GluingTable, validate
from tricomplex.triangulate.homology import homology

FACES = [(t, f) for t in range(2) for f in range(4)]


def matchings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, other in enumerate(rest):
        for m in matchings(rest[:k] + rest[k + 1 :]):
            yield [(first, other)] + m


def face_perms(f: int, g: int):
    """All vertex bijections taking face f to face g."""
    src = [v for v in range(4) if v != f]
    dst = [v for v in range(4) if v != g]
    for img in permutations(dst):
        perm = [0] * 4
        for x, y in zip(src, img):
            perm[x] = y
        perm[f] = g
        yield tuple(perm)


def search():
    found = {}
    stats = Counter()
    for m in matchings(FACES):
        options = [list(face_perms(a[1], b[1])) for a, b in m]
        for choice in product(*options):
            g = GluingTable(2)
            try:
                for ((t, f), (u, _)), perm in zip(m, choice):
                    g.glue(t, f, u, perm)
            except GluingError:
                continue
            stats["tables"] += 1
            rep = validate(g)
            if not (rep.orientable and rep.is_manifold and all(x == 2 for x in rep.vertex_links)):
                continue
            hom = homology(g)
            if hom.ranks[0] != 1:
                continue
            stats["connected closed orientable manifolds"] += 1
            h1 = hom.h1
            stats[h1] += 1
            found.setdefault(h1, g)
    return found, stats


def main():
    found, stats = search()
    for key, n in sorted(stats.items()):
        print(f"{key}: {n}")
    for h1, g in sorted(found.items()):
        print(f"--- first table with H1 = {h1}")
        print(g.to_text(), end="")


if __name__ == "__main__":
    main()
