"""Exact continued fractions of rationals and of quadratic surds.

Rationals are plain :class:`fractions.Fraction` values.  Surds are numbers of
the form ``(P + sqrt(D)) / Q`` and expand into eventually periodic continued
fractions; the expansion is computed by the classical integer recurrence on
the pair ``(P, Q)``, so nothing here ever touches a float.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


# ---------------------------------------------------------------------------
# finite continued fractions

def cf_of_rational(r) -> list[int]:
    """Canonical continued fraction ``[a0, a1, ..., an]`` of a rational.

    ``a0 = floor(r)`` (so it is negative for negative input), every later
    digit is positive, and the last digit is at least 2 whenever there is
    more than one digit.

    >>> cf_of_rational(Fraction(7, 2))
    [3, 2]
    >>> cf_of_rational(Fraction(-3, 2))
    [-2, 2]
    """
    r = as_fraction(r)
    num, den = r.numerator, r.denominator
    digits = []
    while True:
        a, rem = divmod(num, den)
        digits.append(a)
        if rem == 0:
            return digits
        num, den = den, rem


def cf_eval(digits: Sequence[int]) -> Fraction:
    """Exact value of ``[a0, a1, ..., an]``."""
    if not digits:
        raise ValueError("empty continued fraction")
    if any(a < 1 for a in digits[1:]):
        raise ValueError(f"digits after the first must be positive: {list(digits)}")
    value = Fraction(digits[-1])
    for a in reversed(digits[:-1]):
        value = a + 1 / value
    return value


def to_noncanonical(digits: Sequence[int]) -> list[int]:
    """Rewrite ``[..., an]`` as the equal-valued ``[..., an - 1, 1]``."""
    digits = list(digits)
    if len(digits) > 1 and digits[-1] < 2:
        raise ValueError("expansion is already in the non-canonical form")
    return digits[:-1] + [digits[-1] - 1, 1]


def cf_matrix(digits: Iterable[int]) -> tuple[int, int, int, int]:
    """Product of the matrices ``[[a, 1], [1, 0]]``, flattened as (p, p', q, q').

    The Mobius map ``y -> (p*y + p') / (q*y + q')`` prepends the digits to a
    tail value ``y``.
    """
    p, pp, q, qq = 1, 0, 0, 1
    for a in digits:
        p, pp = a * p + pp, p
        q, qq = a * q + qq, q
    return p, pp, q, qq


# ---------------------------------------------------------------------------
# elements of Q(sqrt(d))

@dataclass(frozen=True)
class QuadraticNumber:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and a fixed integer ``d``.

    Used as exact scratch arithmetic by tests and oracles; ``d`` need not be
    square-free.
    """

    a: Fraction
    b: Fraction
    d: int

    def _check(self, other: QuadraticNumber) -> None:
        if self.d != other.d and self.b and other.b:
            raise ValueError("radicands differ")

    def _lift(self, other) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            self._check(other)
            return other
        return QuadraticNumber(as_fraction(other), Fraction(0), self.d)

    def __add__(self, other):
        o = self._lift(other)
        d = self.d if self.b else o.d
        return QuadraticNumber(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        d = self.d if self.b else o.d
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign; requires ``d`` to be a non-square when ``b != 0``."""
        return _sign_a_plus_b_root(self.a, self.b, self.d)

    def same_value(self, other: QuadraticNumber) -> bool:
        if self.a != other.a:
            return False
        if (self.b > 0) != (other.b > 0) or (self.b < 0) != (other.b < 0):
            return False
        return self.b * self.b * self.d == other.b * other.b * other.d

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d ** 0.5


def _sign_a_plus_b_root(a: Fraction, b: Fraction, d: int) -> int:
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs: compare a^2 with b^2 d
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0
    dominant = a if lhs > rhs else b
    return 1 if dominant > 0 else -1


# ---------------------------------------------------------------------------
# quadratic surds

@dataclass(frozen=True, init=False)
class QuadraticSurd:
    """The irrational number ``(P + sqrt(D)) / Q``.

    On construction the triple is rescaled so that ``Q`` divides ``D - P**2``,
    which is the invariant the continued-fraction recurrence needs.  ``D`` is
    never reduced to square-free form.  A negative ``Q`` is allowed and is how
    the conjugate root ``(P - sqrt(D)) / Q`` gets written.
    """

    P: int
    D: int
    Q: int

    def __init__(self, P: int, D: int, Q: int = 1):
        if Q == 0:
            raise ValueError("Q must be nonzero")
        if D <= 0 or is_square(D):
            raise ValueError(f"D = {D} is not a positive non-square; value is rational")
        if (D - P * P) % Q:
            P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "Q", Q)

    @classmethod
    def sqrt(cls, D: int) -> QuadraticSurd:
        return cls(0, D, 1)

    def to_number(self) -> QuadraticNumber:
        return QuadraticNumber(Fraction(self.P, self.Q), Fraction(1, self.Q), self.D)

    def floor(self) -> int:
        s = isqrt(self.D)
        if self.Q > 0:
            return (self.P + s) // self.Q
        return (-self.P - s - 1) // (-self.Q)

    def compare(self, x) -> int:
        """Sign of ``self - x`` for a rational ``x``."""
        x = as_fraction(x)
        return (self.to_number() - x).sign()

    def reduced(self) -> QuadraticSurd:
        """Same value with the smallest ``|Q|`` that keeps the divisibility invariant."""
        g = gcd(self.P, self.Q)
        small = [k for k in range(1, isqrt(g) + 1) if g % k == 0]
        divisors = sorted(set(small) | {g // k for k in small}, reverse=True)
        for f in divisors:
            if self.D % (f * f) == 0:
                P, D, Q = self.P // f, self.D // (f * f), self.Q // f
                if (D - P * P) % Q == 0:
                    return QuadraticSurd(P, D, Q)
        return self

    def conjugate(self) -> QuadraticSurd:
        return QuadraticSurd(-self.P, self.D, -self.Q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadraticSurd):
            return NotImplemented
        return self.to_number().same_value(other.to_number())

    def __hash__(self) -> int:
        return hash((Fraction(self.P, self.Q), Fraction(self.D, self.Q * self.Q), self.Q > 0))

    def __float__(self) -> float:
        return float(self.to_number())

    def __str__(self) -> str:
        P, Q = self.P, self.Q
        sign = "+"
        if Q < 0:
            P, Q, sign = -P, -Q, "-"
        head = f"{P}{sign}" if P else ("" if sign == "+" else "-")
        body = f"{head}√{self.D}"
        return body if Q == 1 else f"({body})/{Q}"


@dataclass(frozen=True)
class PeriodicCF:
    """Eventually periodic continued fraction ``preperiod + period*``.

    ``period`` always has even length; ``minimal_period`` is the shortest
    repeating block, which is doubled into ``period`` when its length is odd.
    Equality compares the infinite digit sequences, so the same expansion
    written with a longer preperiod compares equal.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    minimal_period: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period must be nonempty")
        if len(self.period) % 2:
            raise ValueError("period length must be even")
        if any(a < 1 for a in self.period) or any(a < 1 for a in self.preperiod[1:]):
            raise ValueError("digits after the first must be positive")
        if not self.minimal_period:
            object.__setattr__(self, "minimal_period", _primitive_block(self.period))

    def canonical(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Shortest preperiod together with the shortest repeating block."""
        pre, per = list(self.preperiod), list(_primitive_block(self.period))
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = [per[-1]] + per[:-1]
        return tuple(pre), tuple(per)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicCF):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def digits(self, n: int) -> list[int]:
        out = list(self.preperiod[:n])
        while len(out) < n:
            out.extend(self.period[: n - len(out)])
        return out

    def value(self) -> QuadraticNumber:
        """Exact value, via the fixed point of the period's Mobius map."""
        p, pp, q, qq = cf_matrix(self.period)
        # tail y = (p y + pp) / (q y + qq), the root larger than 1
        disc = (qq - p) ** 2 + 4 * q * pp
        tail = QuadraticNumber(Fraction(p - qq, 2 * q), Fraction(1, 2 * q), disc)
        if not self.preperiod:
            return tail
        a, b, c, d = cf_matrix(self.preperiod)
        num = tail * a + b
        den = tail * c + d
        # divide by den via its conjugate
        conj = QuadraticNumber(den.a, -den.b, den.d)
        norm = (den * conj).a
        out = num * conj
        return QuadraticNumber(out.a / norm, out.b / norm, disc)

    def __str__(self) -> str:
        pre = ", ".join(map(str, self.preperiod))
        per = ", ".join(map(str, self.period))
        return f"[{pre}; ({per})]" if pre else f"[({per})]"


def _primitive_block(block: Sequence[int]) -> tuple[int, ...]:
    n = len(block)
    for d in range(1, n + 1):
        if n % d == 0 and tuple(block[:d]) * (n // d) == tuple(block):
            return tuple(block[:d])
    return tuple(block)


def surd_iteration_cap(x: QuadraticSurd) -> int:
    """Upper bound on the number of distinct ``(P, Q)`` states after step 0.

    From the recurrence, every state after the first satisfies
    ``|Q| <= 2*sqrt(D) + |Q0|`` and ``|P| <= |Q| + sqrt(D)``.
    """
    s = isqrt(x.D) + 1
    q_bound = 2 * s + abs(x.Q)
    p_bound = q_bound + s
    return (2 * p_bound + 1) * (2 * q_bound + 1) + 1


def cf_of_surd(x: QuadraticSurd) -> PeriodicCF:
    """Periodic continued fraction of a quadratic surd.

    The period is found exactly, as the first repeat of the ``(P, Q)`` state,
    and doubled when its minimal length is odd.

    >>> str(cf_of_surd(QuadraticSurd.sqrt(5)))
    '[2; (4, 4)]'
    """
    if not isinstance(x, QuadraticSurd):
        raise TypeError("cf_of_surd needs a QuadraticSurd; use cf_of_rational for rationals")
    P, D, Q = x.P, x.D, x.Q
    s = isqrt(D)
    cap = surd_iteration_cap(x)
    q_bound = 2 * (s + 1) + abs(x.Q)
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    while (P, Q) not in seen:
        if len(digits) > cap:
            raise AssertionError(f"surd iteration exceeded its cap {cap} for {x}")
        if digits:
            assert abs(Q) <= q_bound and abs(P) <= q_bound + s + 1, (P, Q)
        seen[(P, Q)] = len(digits)
        a = (P + s) // Q if Q > 0 else (-P - s - 1) // (-Q)
        digits.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    minimal = tuple(digits[start:])
    period = minimal * 2 if len(minimal) % 2 else minimal
    return PeriodicCF(tuple(digits[:start]), period, minimal)


def periodic_sum(pcf: PeriodicCF) -> int:
    return sum(pcf.period)
