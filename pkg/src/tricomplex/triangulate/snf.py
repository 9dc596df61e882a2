"""Invariant factors of integer matrices.

Boundary matrices of triangulations are sparse with mostly +-1 entries, so the
bulk of the work is unit-pivot elimination on sparse rows.  Whatever is left
without a unit entry is finished by a small dense Smith reduction, and the
diagonal is then put into divisibility order.
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence


def _sparse_rows(matrix: Iterable[Sequence[int]]) -> list[dict[int, int]]:
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]


def _eliminate_units(rows: list[dict[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Remove unit pivots; returns (number removed, remaining rows)."""
    rows = [r for r in rows if r]
    col_index: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_index.setdefault(j, set()).add(i)
    alive = set(range(len(rows)))
    units = 0
    queue = [i for i in alive]
    while queue:
        i = queue.pop()
        if i not in alive:
            continue
        row = rows[i]
        pivot = next((j for j, v in row.items() if v in (1, -1)), None)
        if pivot is None:
            continue
        # clear the pivot column from every other row, then drop row i
        pv = row[pivot]
        for k in list(col_index.get(pivot, ())):
            if k == i:
                continue
            other = rows[k]
            factor = other[pivot] * pv  # pv = +-1 so this is other/pivot
            for j, v in row.items():
                nv = other.get(j, 0) - factor * v
                if nv:
                    if j not in other:
                        col_index.setdefault(j, set()).add(k)
                    other[j] = nv
                else:
                    if j in other:
                        del other[j]
                        col_index[j].discard(k)
            queue.append(k)
        for j in row:
            col_index[j].discard(i)
        alive.discard(i)
        units += 1
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    return units, rest


def _dense_diagonal(rows: list[dict[int, int]]) -> list[int]:
    """Diagonal of a Smith-like reduction (not yet in divisibility order)."""
    cols = sorted({j for r in rows for j in r})
    pos = {j: k for k, j in enumerate(cols)}
    M = [[0] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for j, v in r.items():
            M[i][pos[j]] = v
    diag = []
    m, n = len(M), len(cols)
    t = 0
    while t < m and t < n:
        nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        M[t], M[pi] = M[pi], M[t]
        for row in M:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = M[t][t]
            changed = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // p
                    M[i] = [x - q * y for x, y in zip(M[i], M[t])]
                    if M[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // p
                    for row in M:
                        row[j] -= q * row[t]
                    if M[t][j]:
                        changed = True
            if not changed:
                break
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
            cand += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
            _, pi, pj = min(cand)
            M[t], M[pi] = M[pi], M[t]
            for row in M:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


def _divisibility_order(diag: list[int]) -> list[int]:
    d = sorted(x for x in diag if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def invariant_factors(matrix: Iterable[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix."""
    units, rest = _eliminate_units(_sparse_rows(matrix))
    return [1] * units + _divisibility_order(_dense_diagonal(rest))


def sparse_invariant_factors(rows: list[dict[int, int]]) -> list[int]:
    """As :func:`invariant_factors` for rows given as ``{column: value}`` dicts."""
    units, rest = _eliminate_units([dict(r) for r in rows])
    return [1] * units + _divisibility_order(_dense_diagonal(rest))


def rank_and_torsion(rows: list[dict[int, int]]) -> tuple[int, list[int]]:
    factors = sparse_invariant_factors(rows)
    return len(factors), [d for d in factors if d > 1]
