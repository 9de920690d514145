"""Finite sequences of naturals, the reverse-prefix order, pair coding, rationals.

Sequences are plain tuples of non-negative ints; ``NIL`` is the empty tuple.
Rationals are :class:`fractions.Fraction` values, which are exact,
normalised to lowest terms and unbounded.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Tuple

from .errors import NonEmptyRequired, ParseError

Seq = Tuple[int, ...]
Rational = Fraction

NIL: Seq = ()


def seq(*entries: int) -> Seq:
    for n in entries:
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"sequence entries must be naturals, got {n!r}")
    return tuple(entries)


def length(a: Seq) -> int:
    return len(a)


def concat(a: Seq, b: Seq) -> Seq:
    return a + b


def extend(a: Seq, n: int) -> Seq:
    """``a * n``: append a single entry."""
    return a + (n,)


def initial_segment(a: Seq, n: int) -> Seq:
    if not 0 <= n <= len(a):
        raise IndexError(f"initial segment of length {n} of a sequence of length {len(a)}")
    return a[:n]


def leq_b(a: Seq, b: Seq) -> bool:
    """The Baire order: ``a <=_B b`` iff ``b`` is an initial segment of ``a``.

    Longer sequences are *smaller* (they denote smaller basic opens).
    """
    return len(b) <= len(a) and a[: len(b)] == b


def prefixes(a: Seq) -> Iterator[Seq]:
    """All initial segments of ``a``, shortest first, ``a`` itself last."""
    for k in range(len(a) + 1):
        yield a[:k]


def split_last(a: Seq) -> tuple[Seq, int]:
    """Return ``(head, last)`` with ``head * last == a``."""
    if not a:
        raise NonEmptyRequired("split_last needs a non-empty sequence")
    return a[:-1], a[-1]


def sequences(max_length: int, alphabet: Iterable[int]) -> Iterator[Seq]:
    """Every sequence over ``alphabet`` of length <= ``max_length``,
    ordered by length and then lexicographically."""
    letters = sorted(set(alphabet))
    for k in range(max_length + 1):
        yield from product(letters, repeat=k)


def level(k: int, alphabet: Iterable[int]) -> Iterator[Seq]:
    yield from product(sorted(set(alphabet)), repeat=k)


# -- pair coding -------------------------------------------------------------
#
# Cantor's diagonal enumeration: codes run along the anti-diagonals n+m = w,
# with m increasing inside a diagonal.  It is a bijection N x N -> N and
# satisfies n, m <= pair(n, m).

def pair(n: int, m: int) -> int:
    if n < 0 or m < 0:
        raise ValueError("pair is defined on naturals only")
    w = n + m
    return w * (w + 1) // 2 + m


def unpair(c: int) -> tuple[int, int]:
    if c < 0:
        raise ValueError("unpair is defined on naturals only")
    w = (math.isqrt(8 * c + 1) - 1) // 2
    m = c - w * (w + 1) // 2
    return w - m, m


def j0(c: int) -> int:
    return unpair(c)[0]


def j1(c: int) -> int:
    return unpair(c)[1]


# -- token forms -------------------------------------------------------------

_SEQ_RE = re.compile(r"^\[\s*(\d+(\s*,\s*\d+)*)?\s*\]$")
_RAT_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def format_seq(a: Seq) -> str:
    return "[" + ",".join(str(n) for n in a) + "]"


def parse_seq(text: str) -> Seq:
    text = text.strip()
    if text == "nil":
        return NIL
    if not _SEQ_RE.match(text):
        raise ParseError(f"not a sequence token: {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return NIL
    return tuple(int(tok) for tok in inner.split(","))


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError(f"not a rational token: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)
