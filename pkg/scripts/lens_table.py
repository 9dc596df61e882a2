"""Tabulate lens-space bounds next to the layered triangulations that realize them.

For every coprime 0 < q < p <= P prints the continued fraction, the proxy,
the size of the layered triangulation and its certified first homology.

    python3 scripts/lens_table.py --max-p 30
"""
from __future__ import annotations

import argparse
from fractions import Fraction
from math import gcd

from tricomplex.complexity import lens_bounds
from tricomplex.exact import cf_of_rational
from tricomplex.triangulate import build_lens, homology, validate


def rows(max_p: int):
    for p in range(2, max_p + 1):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            rep = lens_bounds(p, q)
            g = build_lens(p, q)
            v = validate(g)
            ok = v.closed and v.orientable and v.is_manifold and v.euler == 0
            yield p, q, cf_of_rational(Fraction(p, q)), rep.proxy, len(g), homology(g).h1, ok


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-p", type=int, default=20)
    args = ap.parse_args(argv)
    print(f"{'p':>4} {'q':>4}  {'cf':<20} {'proxy':>5} {'tets':>5}  {'H1':<8} ok")
    for p, q, cf, proxy, tets, h1, ok in rows(args.max_p):
        print(f"{p:>4} {q:>4}  {str(cf):<20} {str(proxy):>5} {tets:>5}  {h1:<8} {'yes' if ok else 'NO'}")


if __name__ == "__main__":
    main()
