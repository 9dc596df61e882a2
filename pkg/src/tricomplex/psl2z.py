"""Integer 2x2 matrices and the word problem in PSL(2, Z) = Z/2 * Z/3.

Words use the generators ``S = [[0,-1],[1,0]]`` (order 2) and
``T = [[0,-1],[1,-1]]`` (order 3); ``T'`` stands for ``T**-1 = T**2``.
Every element of PSL(2, Z) has a unique reduced word alternating between
``S`` and a T-letter.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exact import QuadraticSurd
from .parsing import ParseError, parse_matrix


@dataclass(frozen=True)
class IntMatrix:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def parse(cls, text: str) -> IntMatrix:
        return cls(*parse_matrix(text))

    @classmethod
    def of(cls, rows) -> IntMatrix:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> IntMatrix:
        return cls(1, 0, 0, 1)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, o: IntMatrix) -> IntMatrix:
        return IntMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> IntMatrix:
        det = self.det()
        if det not in (1, -1):
            raise ValueError(f"{self} is not invertible over Z")
        return IntMatrix(self.d * det, -self.b * det, -self.c * det, self.a * det)

    def __pow__(self, n: int) -> IntMatrix:
        base = self if n >= 0 else self.inverse()
        out = IntMatrix.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def psl_normal(self) -> IntMatrix:
        """Representative of ``±self`` whose first nonzero of (a, b, c) is positive."""
        for x in (self.a, self.b, self.c):
            if x:
                return self if x > 0 else -self
        return self if self.d > 0 else -self

    def psl_equal(self, other: IntMatrix) -> bool:
        return self.psl_normal() == other.psl_normal()

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = IntMatrix.identity()
S_MATRIX = IntMatrix(0, -1, 1, 0)
T_MATRIX = IntMatrix(0, -1, 1, -1)
# R = T'S = [[1,1],[0,1]]
R_MATRIX = IntMatrix(1, 1, 0, 1)


def _require_sl2(A: IntMatrix) -> None:
    if A.det() != 1:
        raise ValueError(f"{A} has determinant {A.det()}, expected 1")


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class Classification:
    kind: str
    trace: int


def classify(A: IntMatrix) -> Classification:
    _require_sl2(A)
    t = abs(A.trace())
    if t > 2:
        kind = "Anosov"
    elif t == 2:
        kind = "Parabolic"
    else:
        kind = "Elliptic"
    return Classification(kind, A.trace())


def is_anosov(A: IntMatrix) -> bool:
    return A.det() == 1 and abs(A.trace()) > 2


# ---------------------------------------------------------------------------
# words
#
# Internally a word is a tuple of tokens: "S" or a T-exponent 1 (T) / 2 (T').

_LETTER = {"S": "S", 1: "T", 2: "T'"}
_TOKEN = {"S": "S", "T": 1, "T'": 2, "T^-1": 2, "t": 2}


def _reduce(tokens: Iterable) -> tuple:
    out: list = []
    for tok in tokens:
        if tok == "S":
            if out and out[-1] == "S":
                out.pop()
            else:
                out.append("S")
            continue
        k = tok % 3
        if k == 0:
            continue
        if out and out[-1] != "S":
            k = (out.pop() + k) % 3
            if k == 0:
                continue
        out.append(k)
    return tuple(out)


class GroupWord:
    """A reduced word in ``S``, ``T``, ``T'``; immutable and hashable."""

    __slots__ = ("_tokens",)

    def __init__(self, letters: Iterable = ()):
        toks = []
        for x in letters:
            if x in _TOKEN:
                toks.append(_TOKEN[x])
            elif x in (1, 2):
                toks.append(x)
            else:
                raise ValueError(f"unknown letter {x!r}")
        self._tokens = _reduce(toks)

    @classmethod
    def _from_tokens(cls, tokens) -> GroupWord:
        w = cls.__new__(cls)
        w._tokens = _reduce(tokens)
        return w

    @classmethod
    def parse(cls, text: str) -> GroupWord:
        text = "".join(text.split())
        if text in ("", "1", "e"):
            return cls()
        letters, i = [], 0
        while i < len(text):
            ch = text[i]
            if ch == "S":
                letters.append("S")
                i += 1
            elif ch == "T":
                if text.startswith("'", i + 1):
                    letters.append("T'")
                    i += 2
                else:
                    letters.append("T")
                    i += 1
            else:
                raise ParseError(f"unexpected character {ch!r} in word", text, i)
        return cls(letters)

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(_LETTER[t] for t in self._tokens)

    @property
    def tokens(self) -> tuple:
        return self._tokens

    def __len__(self) -> int:
        return len(self._tokens)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupWord) and self._tokens == other._tokens

    def __hash__(self) -> int:
        return hash(self._tokens)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord._from_tokens(self._tokens + other._tokens)

    def __pow__(self, n: int) -> GroupWord:
        base = self if n >= 0 else self.inverse()
        return GroupWord._from_tokens(base._tokens * abs(n))

    def inverse(self) -> GroupWord:
        inv = tuple("S" if t == "S" else 3 - t for t in reversed(self._tokens))
        return GroupWord._from_tokens(inv)

    def rotate(self, k: int) -> GroupWord:
        if not self._tokens:
            return self
        k %= len(self._tokens)
        return GroupWord._from_tokens(self._tokens[k:] + self._tokens[:k])

    def __str__(self) -> str:
        return "".join(self.letters) or "1"

    def __repr__(self) -> str:
        return f"GroupWord({str(self)!r})"


def word_to_matrix(w: GroupWord) -> IntMatrix:
    """Product of the generator matrices, normalized in PSL(2, Z)."""
    T2 = T_MATRIX @ T_MATRIX
    out = IDENTITY
    for t in w.tokens:
        out = out @ (S_MATRIX if t == "S" else (T_MATRIX if t == 1 else T2))
    return out.psl_normal()


def _r_power(k: int) -> list:
    # R = T'S, R^-1 = ST
    return [2, "S"] * k if k >= 0 else ["S", 1] * (-k)


def matrix_to_word(A: IntMatrix) -> GroupWord:
    """Reduced word for ``±A`` by Euclidean row reduction.

    Each step peels off a power of ``R = [[1,1],[0,1]]`` followed by ``S``:
    ``A = R^k S A'`` where ``A'`` has a strictly smaller lower-left entry.
    """
    _require_sl2(A)
    tokens: list = []
    a, b, c, d = A.a, A.b, A.c, A.d
    while c != 0:
        k = a // c
        tokens += _r_power(k)
        a, b = a - k * c, b - k * d
        tokens.append("S")
        a, b, c, d = c, d, -a, -b
    # [[a, b], [0, d]] with a = d = ±1
    tokens += _r_power(a * b)
    w = GroupWord._from_tokens(tokens)
    assert word_to_matrix(w) == A.psl_normal(), (A, w)
    return w


def cyclic_reduce(w: GroupWord) -> GroupWord:
    """Shortest conjugate of ``w``; unique up to cyclic rotation."""
    toks = list(w.tokens)
    while len(toks) >= 2:
        first, last = toks[0], toks[-1]
        if first == "S" and last == "S":
            toks = toks[1:-1]
        elif first != "S" and last != "S":
            k = (first + last) % 3
            toks = toks[1:-1]
            if k:
                toks.insert(0, k)
        else:
            break
    return GroupWord._from_tokens(toks)


def is_cyclic_rotation(u: GroupWord, v: GroupWord) -> bool:
    if len(u) != len(v):
        return False
    if not u.tokens:
        return True
    doubled = u.tokens + u.tokens
    n = len(v.tokens)
    return any(doubled[i : i + n] == v.tokens for i in range(n))


def word_length(A: IntMatrix) -> int:
    """Length of a cyclically reduced word conjugate to ``±A``."""
    return len(cyclic_reduce(matrix_to_word(A)))


def primitive_root(w: GroupWord) -> tuple[GroupWord, int]:
    """``(B, n)`` with ``w = B**n`` as cyclic words and ``n`` maximal."""
    if not w.tokens:
        raise ValueError("the empty word has no primitive root")
    toks = w.tokens
    n = len(toks)
    for d in range(1, n + 1):
        if n % d == 0 and toks[:d] * (n // d) == toks:
            return GroupWord._from_tokens(toks[:d]), n // d
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# fixed points

def fixed_slopes(A: IntMatrix) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Attracting and repelling fixed points of ``u -> (a u + b)/(c u + d)``.

    Both roots of ``c u^2 + (d - a) u - b = 0``, written as
    ``(a - d ± sqrt(tr^2 - 4)) / (2c)``; the attracting one (eigenvector with
    the larger eigenvalue in absolute value) comes first.
    """
    cls = classify(A)
    if cls.kind != "Anosov":
        raise ValueError(f"{A} is {cls.kind}, not Anosov")
    assert A.c != 0, "det 1 with c = 0 forces |trace| = 2"
    disc = A.trace() ** 2 - 4
    sgn = 1 if A.trace() > 0 else -1
    attracting = QuadraticSurd(sgn * (A.a - A.d), disc, sgn * 2 * A.c)
    repelling = QuadraticSurd(-sgn * (A.a - A.d), disc, -sgn * 2 * A.c)
    return attracting.reduced(), repelling.reduced()


def random_word(rng, length: int) -> GroupWord:
    """Uniform-ish reduced alternating word with exactly ``length`` letters."""
    start_s = rng.random() < 0.5
    toks = []
    for i in range(length):
        if (i % 2 == 0) == start_s:
            toks.append("S")
        else:
            toks.append(rng.choice((1, 2)))
    return GroupWord._from_tokens(toks)


def random_anosov(rng, max_length: int = 20) -> IntMatrix:
    """An Anosov matrix drawn from random generator words of bounded length."""
    while True:
        w = random_word(rng, rng.randint(2, max_length))
        A = word_to_matrix(w)
        if abs(A.trace()) > 2:
            return A if rng.random() < 0.5 else -A
