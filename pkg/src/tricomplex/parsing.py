"""Text syntax for matrices, fractions, slopes and triangles.

All parsers are whitespace-insensitive and raise :class:`ParseError` carrying
the character offset of the first problem.
"""
from __future__ import annotations

import re
from fractions import Fraction


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


_INT = re.compile(r"[+-]?\d+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, message):
        raise ParseError(message, self.text, self.pos)

    def expect(self, ch: str):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            self.fail(f"expected {ch!r}")
        self.pos += len(ch)

    def peek(self, ch: str) -> bool:
        self.skip()
        return self.text.startswith(ch, self.pos)

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def end(self):
        self.skip()
        if self.pos != len(self.text):
            self.fail("unexpected trailing text")


def parse_matrix(text: str) -> tuple[int, int, int, int]:
    """``"[[a,b],[c,d]]"`` -> ``(a, b, c, d)``."""
    s = _Scanner(text)
    s.expect("[")
    s.expect("[")
    a = s.integer()
    s.expect(",")
    b = s.integer()
    s.expect("]")
    s.expect(",")
    s.expect("[")
    c = s.integer()
    s.expect(",")
    d = s.integer()
    s.expect("]")
    s.expect("]")
    s.end()
    return a, b, c, d


def _ratio(s: _Scanner) -> tuple[int, int]:
    s.skip()
    if s.text.startswith("inf", s.pos):
        s.pos += 3
        return 1, 0
    p = s.integer()
    q = 1
    if s.peek("/"):
        s.expect("/")
        q = s.integer()
    return p, q


def parse_fraction(text: str) -> Fraction:
    s = _Scanner(text)
    p, q = _ratio(s)
    s.end()
    if q == 0:
        raise ParseError("zero denominator", text, len(text))
    return Fraction(p, q)


def parse_ratio(text: str) -> tuple[int, int]:
    """A slope ``p/q``, a bare integer, or ``inf``; not yet reduced."""
    s = _Scanner(text)
    out = _ratio(s)
    s.end()
    if out == (0, 0):
        raise ParseError("0/0 is not a slope", text, 0)
    return out


def parse_triangle(text: str) -> list[tuple[int, int]]:
    """``"{a, b, c}"`` with slope entries -> three raw ratios."""
    s = _Scanner(text)
    s.expect("{")
    out = [_ratio(s)]
    for _ in range(2):
        s.expect(",")
        out.append(_ratio(s))
    s.expect("}")
    s.end()
    return out
