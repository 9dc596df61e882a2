"""Command-line front end.

Every subcommand prints human-readable text, or a single JSON object with
``--json`` in which all numbers are decimal strings.  Exit status is 0 on
success, 2 for usage errors and malformed input syntax, 1 when the input
parses but violates a precondition.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable

from .complexity import (
    BoundsReport,
    SeifertData,
    lens_bounds,
    platonic_bounds,
    prism_bounds,
    product_bounds,
    sol_bounds_cf,
    sol_bounds_word,
)
from .exact import QuadraticSurd, cf_eval, cf_of_rational, cf_of_surd, periodic_sum
from .farey import FareyTriangle, translation_length, tree_path
from .parsing import ParseError, parse_fraction, parse_ratio
from .psl2z import GroupWord, IntMatrix, classify, cyclic_reduce, matrix_to_word, primitive_root, word_to_matrix
from .triangulate import GluingError, GluingTable, build_lens, build_sol, build_torus_product, homology, validate


def _matrix(text: str) -> IntMatrix:
    return IntMatrix.parse(text)


def _triangle(text: str) -> FareyTriangle:
    return FareyTriangle.parse(text)


def _matrix_or_word(text: str) -> IntMatrix:
    if text.strip().startswith("["):
        return _matrix(text)
    return word_to_matrix(GroupWord.parse(text))


def _fraction_pair(text: str) -> tuple[int, int]:
    num, den = parse_ratio(text)
    if den == 0:
        raise ValueError(f"{text!r} has zero denominator")
    return (-num, -den) if den < 0 else (num, den)


def _read_table(path: str | None) -> GluingTable:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    if text.lstrip().startswith("{"):
        return GluingTable.from_json(text)
    return GluingTable.from_text(text)


def _strs(xs) -> list[str]:
    return [str(x) for x in xs]


def _plural(n: int, word: str, plural: str) -> str:
    return f"{n} {word if n == 1 else plural}"


# ---------------------------------------------------------------------------
# subcommands: each returns (text, json-able dict)

def cmd_cf(args):
    r = parse_fraction(args.value)
    digits = cf_of_rational(r)
    assert cf_eval(digits) == r
    return f"{r} = {digits}", {"value": str(r), "digits": _strs(digits)}


def cmd_surd(args):
    x = QuadraticSurd(args.P, args.D, args.Q)
    pcf = cf_of_surd(x)
    data = {
        "surd": str(x),
        "P": str(x.P),
        "D": str(x.D),
        "Q": str(x.Q),
        "preperiod": _strs(pcf.preperiod),
        "period": _strs(pcf.period),
        "minimal_period": _strs(pcf.minimal_period),
        "period_sum": str(periodic_sum(pcf)),
    }
    text = f"{x} = {pcf}  (period sum {periodic_sum(pcf)})"
    return text, data


def cmd_word(args):
    A = _matrix_or_word(args.matrix)
    cls = classify(A)
    w = matrix_to_word(A)
    red = cyclic_reduce(w)
    data = {
        "matrix": str(A.psl_normal()),
        "kind": cls.kind,
        "trace": str(cls.trace),
        "word": str(w),
        "cyclically_reduced": str(red),
        "length": str(len(red)),
    }
    lines = [
        f"matrix: {A.psl_normal()}",
        f"class: {cls.kind} (trace {cls.trace})",
        f"word: {w}",
        f"cyclically reduced: {red} (length {len(red)})",
    ]
    if len(red):
        root, n = primitive_root(red)
        data.update(primitive_root=str(root), power=str(n))
        lines.append(f"primitive root: {root} ^ {n}")
    return "\n".join(lines), data


def cmd_tlen(args):
    A = _matrix_or_word(args.matrix)
    values = {"word": translation_length(A, "word"), "axis_oracle": translation_length(A, "axis_oracle")}
    if classify(A).kind == "Anosov":
        values["fixed_point_cf"] = translation_length(A, "fixed_point_cf")
    distinct = set(values.values())
    cf = values.get("fixed_point_cf", "n/a")
    head = f"{distinct.pop()}" if len(distinct) == 1 else "methods disagree"
    text = f"translation length: {head} (word={values['word']}, axis={values['axis_oracle']}, cf={cf})"
    data = {k: str(v) for k, v in values.items()}
    data["agree"] = len(set(values.values())) == 1
    return text, data


def _report(rep: BoundsReport):
    lines = [
        f"family: {rep.family}",
        f"proxy: {rep.proxy}",
        f"upper: {rep.upper if rep.upper is not None else 'none certified'}",
        f"lower: {rep.lower_form}",
    ]
    lines += [f"note: {n}" for n in rep.notes]
    return "\n".join(lines), rep.to_dict()


def cmd_lens(args):
    return _report(lens_bounds(args.p, args.q))


def cmd_prism(args):
    return _report(prism_bounds(args.p, args.q))


def cmd_platonic(args):
    fs = [_fraction_pair(x) for x in (args.f1, args.f2, args.f3)]
    return _report(platonic_bounds(SeifertData.normalized(args.p0, *fs)))


def cmd_sol(args):
    A = _matrix(args.matrix)
    rep = sol_bounds_cf(A) if args.method == "cf" else sol_bounds_word(A)
    return _report(rep)


def cmd_product(args):
    return _report(product_bounds(_triangle(args.t0), _triangle(args.t1)))


def _table_output(g: GluingTable):
    return g.to_text().rstrip("\n"), json.loads(g.to_json())


def cmd_build_lens(args):
    return _table_output(build_lens(args.p, args.q))


def cmd_build_sol(args):
    return _table_output(build_sol(_matrix(args.matrix)))


def cmd_build_product(args):
    path = tree_path(_triangle(args.t0), _triangle(args.t1))
    return _table_output(build_torus_product(path).table)


def cmd_validate(args):
    g = _read_table(args.file)
    rep = validate(g)
    kind = ("closed" if rep.closed else "bounded") + " " + ("orientable" if rep.orientable else "non-orientable")
    h1 = homology(g).h1 if rep.edges_ok else "undefined"
    lines = [
        f"{kind}, {_plural(rep.tetrahedra, 'tetrahedron', 'tetrahedra')}, H1={h1}",
        f"vertices {rep.vertex_count}, edges {rep.edge_count}, faces {rep.face_count}, euler {rep.euler}",
    ]
    for k, b in enumerate(rep.boundary):
        counts = [_plural(b.faces, "face", "faces"), _plural(b.edges, "edge", "edges"), _plural(b.vertices, "vertex", "vertices")]
        lines.append(f"boundary {k}: " + ", ".join(counts))
    if not rep.is_manifold:
        lines.append("warning: not a manifold (bad vertex link or reversed edge)")
    data = rep.to_dict()
    data["H1"] = h1
    return "\n".join(lines), data


def cmd_homology(args):
    g = _read_table(args.file)
    prof = homology(g)
    text = " ".join(f"H{k}={prof.group(k)}" for k in range(4))
    return text, prof.to_dict()


# ---------------------------------------------------------------------------

# argparse only treats "-3" and "-.5" as negative numbers; let "-3/2" through too
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tricomplex", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str):
        p = sub.add_parser(name, help=help)
        p._negative_number_matcher = _NEGATIVE
        p.add_argument("--json", action="store_true", help="emit one JSON object")
        p.set_defaults(func=fn)
        return p

    p = add("cf", cmd_cf, "continued fraction of a rational")
    p.add_argument("value", help="p/q or an integer")
    p = add("surd", cmd_surd, "periodic continued fraction of (P + sqrt(D))/Q")
    p.add_argument("P", type=int)
    p.add_argument("D", type=int)
    p.add_argument("Q", type=int, nargs="?", default=1)
    p = add("word", cmd_word, "word, class and cyclic reduction of a matrix")
    p.add_argument("matrix", help="[[a,b],[c,d]] or a word such as T'STS")
    p = add("tlen", cmd_tlen, "Farey tree translation length by every method")
    p.add_argument("matrix", help="[[a,b],[c,d]] or a word")
    p = add("lens", cmd_lens, "bounds for the lens space L(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p = add("prism", cmd_prism, "bounds for the prism manifold P(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p = add("platonic", cmd_platonic, "bounds from Seifert data p0; p1/2, p2/3, p3/q3")
    p.add_argument("p0", type=int)
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("f3")
    p = add("sol", cmd_sol, "bounds for the torus bundle with Anosov monodromy")
    p.add_argument("matrix")
    p.add_argument("--method", choices=("word", "cf"), default="word")
    p = add("product", cmd_product, "bounds for T^2 x I between two triangulations")
    p.add_argument("t0", help="{a, b, c}")
    p.add_argument("t1", help="{a, b, c}")
    p = add("build-lens", cmd_build_lens, "layered triangulation of L(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p = add("build-sol", cmd_build_sol, "triangulation of an Anosov torus bundle")
    p.add_argument("matrix")
    p = add("build-product", cmd_build_product, "layered T^2 x I between two triangulations")
    p.add_argument("t0")
    p.add_argument("t1")
    p = add("validate", cmd_validate, "check a gluing table (file or stdin)")
    p.add_argument("file", nargs="?")
    p = add("homology", cmd_homology, "integer homology of a gluing table (file or stdin)")
    p.add_argument("file", nargs="?")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, data = args.func(args)
    except (ParseError, GluingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(data))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
