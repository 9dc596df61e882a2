"""Complexity bound calculators for lens, prism, Platonic, Sol and T^2 x I manifolds.

Every family has a two-sided bound ``k * proxy <= Delta(M) <= upper`` where
``k`` is a positive universal constant with no known value.  A report keeps
the proxy exact, the upper bound as an integer when a construction certifies
one, and renders the lower bound symbolically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .exact import QuadraticSurd, cf_of_rational, cf_of_surd, periodic_sum
from .farey import FareyTriangle, translation_length_cf, tree_distance
from .psl2z import IntMatrix, classify, cyclic_reduce, matrix_to_word, primitive_root, word_length

FAMILIES = ("Lens", "Prism", "Platonic", "Sol", "Product")

_CONSTANT = {
    "Lens": "k_lens",
    "Prism": "k_prism",
    "Platonic": "k_platonic",
    "Sol": "k_sol",
    "Product": "k_prod",
}


def _lower_form(family: str, proxy: Fraction) -> str:
    k = _CONSTANT[family]
    return f"{k} * {proxy} for an unspecified universal {k} > 0"


@dataclass
class BoundsReport:
    family: str
    proxy: Fraction
    upper: Optional[int] = None
    lower_form: str = ""
    notes: list[str] = field(default_factory=list)
    # auxiliary exact quantities, stored as decimal strings
    details: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        self.proxy = Fraction(self.proxy)
        if not self.lower_form:
            self.lower_form = _lower_form(self.family, self.proxy)
        if self.upper is not None and self.upper < 1:
            raise ValueError(f"upper bound {self.upper} is below 1")

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "proxy": str(self.proxy),
            "upper": None if self.upper is None else str(self.upper),
            "lower_form": self.lower_form,
            "notes": list(self.notes),
            "details": dict(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> BoundsReport:
        return cls(
            family=d["family"],
            proxy=Fraction(d["proxy"]),
            upper=None if d.get("upper") is None else int(d["upper"]),
            lower_form=d.get("lower_form", ""),
            notes=list(d.get("notes", [])),
            details=dict(d.get("details", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> BoundsReport:
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# lens and prism manifolds

def _check_lens(p: int, q: int) -> None:
    if not (0 < q < p) or gcd(p, q) != 1:
        raise ValueError(f"lens space needs coprime 0 < q < p, got ({p}, {q})")


def lens_bounds(p: int, q: int) -> BoundsReport:
    _check_lens(p, q)
    digits = cf_of_rational(Fraction(p, q))
    total = sum(digits)
    notes = [f"continued fraction of {p}/{q} is {digits}"]
    details = {"cf_sum": str(total)}
    if p > 3:
        n = total - 3
        notes.append(f"layered triangulation with cf sum - 3 = {n} tetrahedr{'on' if n == 1 else 'a'}")
        details["layered_upper"] = str(total - 3)
    else:
        notes.append(f"L({p},{q}) has complexity exactly 2")
    if p % 2 == 0 and p >= 4 and q in (1, p - 1):
        notes.append(f"L({p},{q}) is of the form L(2n, 1), whose exact complexity is known from prior work")
    if p % 4 == 0 and p >= 8 and q in (p // 2 - 1, p // 2 + 1):
        notes.append(f"L({p},{q}) is of the form L(4n, 2n+-1), whose exact complexity is known from prior work")
    return BoundsReport("Lens", Fraction(total), upper=total, notes=notes, details=details)


def prism_bounds(p: int, q: int) -> BoundsReport:
    if p == 0 or q == 0 or gcd(p, q) != 1:
        raise ValueError(f"prism manifold needs nonzero coprime (p, q), got ({p}, {q})")
    digits = cf_of_rational(Fraction(p, q))
    total = sum(digits)
    notes = [f"continued fraction of {p}/{q} is {digits}"]
    if total <= 0:
        notes.append(
            f"warning: proxy {total} is not positive (negative p/q); "
            "the sign normalization of (p, q) for this regime is unclear"
        )
    return BoundsReport("Prism", Fraction(total), upper=None, notes=notes, details={"cf_sum": str(total)})


# ---------------------------------------------------------------------------
# Platonic manifolds

PLATONIC_Q3 = (3, 4, 5)


@dataclass(frozen=True)
class SeifertData:
    """Normalized Seifert invariants ``p0; p1/2, p2/3, p3/q3`` with ``q3`` in 3..5.

    ``e = 0`` is rejected on construction before the (2, 3, q3) profile is
    checked, so data such as ``-1; 1/2, 1/3, 1/6`` fails as non-elliptic.
    """

    p0: int
    f1: tuple[int, int]
    f2: tuple[int, int]
    f3: tuple[int, int]

    def __post_init__(self):
        for p, q in self.fractions:
            if not (0 < p < q) or gcd(p, q) != 1:
                raise ValueError(f"fibre invariant {p}/{q} must be coprime with 0 < p < q")
        if euler_number(self.p0, self.fractions) == 0:
            raise ValueError("Euler number e = 0: not realizable as an elliptic manifold")
        qs = tuple(q for _, q in self.fractions)
        if qs[:2] != (2, 3) or qs[2] not in PLATONIC_Q3:
            raise ValueError(f"fibre orders {qs} are not of the form (2, 3, 3|4|5)")

    @property
    def fractions(self) -> tuple[tuple[int, int], ...]:
        return (self.f1, self.f2, self.f3)

    @classmethod
    def normalized(cls, p0: int, f1, f2, f3) -> SeifertData:
        """Accept any numerators; integer parts are moved into ``p0``."""
        fs = []
        for p, q in (f1, f2, f3):
            k, r = divmod(p, q)
            p0 += k
            fs.append((r, q))
        return cls(p0, *fs)

    def __str__(self) -> str:
        return f"{self.p0}; " + ", ".join(f"{p}/{q}" for p, q in self.fractions)


def euler_number(p0: int, fractions) -> Fraction:
    return p0 + sum((Fraction(p, q) for p, q in fractions), Fraction(0))


def platonic_euler(s: SeifertData) -> Fraction:
    e = euler_number(s.p0, s.fractions)
    if e == 0:
        raise ValueError("Euler number e = 0: not realizable as an elliptic manifold")
    return e


def platonic_bounds(s: SeifertData) -> BoundsReport:
    e = platonic_euler(s)
    notes = [
        f"Euler number e = {e}",
        "no certified upper integer: the construction's additive constant is unspecified",
    ]
    return BoundsReport("Platonic", abs(e), upper=None, notes=notes, details={"euler": str(e)})


# ---------------------------------------------------------------------------
# Sol manifolds

def _require_anosov(A: IntMatrix) -> None:
    kind = classify(A).kind
    if kind != "Anosov":
        raise ValueError(f"{A} is {kind}, not Anosov")


def sol_bounds_word(A: IntMatrix) -> BoundsReport:
    _require_anosov(A)
    ell = word_length(A)
    assert ell % 2 == 0 and ell >= 2, ell
    word = cyclic_reduce(matrix_to_word(A))
    return BoundsReport(
        "Sol",
        Fraction(ell),
        upper=ell // 2 + 6,
        notes=[f"cyclically reduced word {word} of length {ell}"],
        details={"word": str(word), "word_length": str(ell)},
    )


def sol_bounds_cf(A: IntMatrix) -> BoundsReport:
    """Bounds from continued fraction periods, computed under two readings.

    (i) the period of ``sqrt(tr^2 - 4)`` and (ii) the period of the attracting
    fixed slope of ``A``.  Both are multiplied by the proper-power exponent
    ``n``.  Only (ii) equals the translation length; the report uses it as the
    proxy and flags any disagreement with (i) instead of reconciling them.
    """
    _require_anosov(A)
    _, n = primitive_root(cyclic_reduce(matrix_to_word(A)))
    root = QuadraticSurd.sqrt(A.trace() ** 2 - 4)
    literal = n * periodic_sum(cf_of_surd(root))
    fixed = translation_length_cf(A)
    disagree = literal != fixed
    notes = [
        f"proper-power exponent n = {n}",
        f"reading (i): n * period sum of cf({root}) = {literal}",
        f"reading (ii): n * period sum of cf(attracting fixed slope) = {fixed}",
    ]
    if disagree:
        notes.append(f"disagreement: reading (i) = {literal} differs from reading (ii) = {fixed}; proxy uses (ii)")
    details = {
        "n": str(n),
        "sqrt_reading": str(literal),
        "fixed_point_reading": str(fixed),
        "disagreement": "true" if disagree else "false",
    }
    return BoundsReport("Sol", Fraction(fixed), upper=fixed + 6, notes=notes, details=details)


# ---------------------------------------------------------------------------
# products T^2 x I

def product_bounds(t0: FareyTriangle, t1: FareyTriangle) -> BoundsReport:
    d = tree_distance(t0, t1)
    return BoundsReport(
        "Product",
        Fraction(d),
        upper=d + 6,
        notes=[f"Farey tree distance from {t0} to {t1} is {d}"],
        details={"distance": str(d)},
    )
