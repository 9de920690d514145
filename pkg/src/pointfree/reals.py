"""The formal reals and the formal unit interval over exact rational intervals.

Finite covers are decided by merging open intervals, checked against an
independent pointwise oracle, and certified by trees in the inductive rules
(eta, widening, approximation from inside, splitting, and for the unit
interval the two rules discarding intervals outside ``[0, 1]``).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .core import format_rational, parse_rational
from .errors import EnumerationTooLarge, FuelExhausted, InvalidInterval, NotCoverable, ParseError

R = "r"
I01 = "i01"
MODES = (R, I01)

ZERO, ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True, order=True)
class RatInterval:
    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if not self.p < self.q:
            raise InvalidInterval(f"interval needs p < q, got ({self.p}, {self.q})")

    def __str__(self) -> str:
        return f"({format_rational(self.p)},{format_rational(self.q)})"

    def contains(self, x: Fraction) -> bool:
        return self.p < x < self.q

    def leq(self, other: RatInterval) -> bool:
        """Contained in ``other``."""
        return other.p <= self.p and self.q <= other.q

    def lt(self, other: RatInterval) -> bool:
        """Strictly inside ``other`` at both ends."""
        return other.p < self.p and self.q < other.q


def interval(p, q) -> RatInterval:
    return RatInterval(Fraction(p), Fraction(q))


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


# -- the region a cover must reach ------------------------------------------
#
# Covering (p, q) means covering every [p', q'] with p < p' < q' < q, clipped
# to [0, 1] for the unit interval.  The union of these compact pieces is the
# region below: open at p and q, except that for the unit interval it is
# clipped to [0, 1] and contains 0 when p < 0 and 1 when q > 1.

@dataclass(frozen=True)
class Region:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def contains(self, x: Fraction) -> bool:
        left = self.lo <= x if self.lo_closed else self.lo < x
        right = x <= self.hi if self.hi_closed else x < self.hi
        return left and right


def region(mode: str, t: RatInterval) -> Optional[Region]:
    _check_mode(mode)
    if mode == R:
        return Region(t.p, t.q, False, False)
    lo, lo_closed = (ZERO, True) if t.p < 0 else (t.p, False)
    hi, hi_closed = (ONE, True) if t.q > 1 else (t.q, False)
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return None
    return Region(lo, hi, lo_closed, hi_closed)


def merged(cover: Iterable[RatInterval]) -> list[tuple[Fraction, Fraction]]:
    """Connected components of a union of open intervals.  Intervals merge
    only when they overlap: ``(0,1)`` and ``(1,2)`` leave the point 1 out."""
    out: list = []
    for iv in sorted(cover):
        if out and iv.p < out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], iv.q))
        else:
            out.append((iv.p, iv.q))
    return out


def _component_covers(a: Fraction, b: Fraction, reg: Region) -> bool:
    left = a < reg.lo if reg.lo_closed else a <= reg.lo
    right = reg.hi < b if reg.hi_closed else reg.hi <= b
    return left and right


def finite_cover_decide(mode: str, t: RatInterval, cover: Iterable[RatInterval]) -> bool:
    reg = region(mode, t)
    if reg is None:
        return True
    return any(_component_covers(a, b, reg) for a, b in merged(cover))


# -- the pointwise oracle ----------------------------------------------------

def critical_points(mode: str, t: RatInterval, cover: Sequence[RatInterval]) -> list[Fraction]:
    """Every endpoint and every midpoint between consecutive endpoints that
    lies in the region.  Coverage is constant between consecutive
    endpoints, so these points decide coverage of the whole region."""
    reg = region(mode, t)
    if reg is None:
        return []
    marks = {t.p, t.q, ZERO, ONE}
    for iv in cover:
        marks.update((iv.p, iv.q))
    marks = sorted(marks)
    pts = marks + [(x + y) / 2 for x, y in zip(marks, marks[1:])]
    return sorted(x for x in pts if reg.contains(x))


def uncovered_point(mode: str, t: RatInterval, cover: Sequence[RatInterval]) -> Optional[Fraction]:
    """The least critical point of the region outside every interval, if any."""
    cover = list(cover)
    for x in critical_points(mode, t, cover):
        if not any(iv.contains(x) for iv in cover):
            return x
    return None


def grid_oracle(mode: str, t: RatInterval, cover: Sequence[RatInterval]) -> bool:
    return uncovered_point(mode, t, list(cover)) is None


def grid_denominator(t: RatInterval, cover: Sequence[RatInterval]) -> int:
    dens = [t.p.denominator, t.q.denominator]
    for iv in cover:
        dens += [iv.p.denominator, iv.q.denominator]
    return 2 * math.lcm(*dens)


def full_grid_oracle(mode: str, t: RatInterval, cover: Sequence[RatInterval], limit: int = 200_000) -> bool:
    """Test every point ``i/N`` of the region, ``N`` twice the lcm of all
    denominators.  Only for small grids; used to validate the sparse oracle."""
    reg = region(mode, t)
    if reg is None:
        return True
    n = grid_denominator(t, cover)
    lo, hi = math.floor(reg.lo * n), math.ceil(reg.hi * n)
    if hi - lo > limit:
        raise EnumerationTooLarge(f"grid of {hi - lo} points exceeds {limit}")
    for i in range(lo, hi + 1):
        x = Fraction(i, n)
        if reg.contains(x) and not any(iv.contains(x) for iv in cover):
            return False
    return True


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class EtaR:
    conclusion: RatInterval


@dataclass(frozen=True)
class Widen:
    """The conclusion lies inside ``wider``, which is derived by ``child``."""
    conclusion: RatInterval
    wider: RatInterval
    child: "Certificate"


@dataclass(frozen=True)
class Split:
    conclusion: RatInterval
    p1: Fraction
    q1: Fraction
    left: "Certificate"  # derives (p, q1)
    right: "Certificate"  # derives (p1, q)


@dataclass(frozen=True)
class DiscardBelow:
    """Unit interval only: the conclusion lies entirely below 0."""
    conclusion: RatInterval


@dataclass(frozen=True)
class DiscardAbove:
    """Unit interval only: the conclusion lies entirely above 1."""
    conclusion: RatInterval


@dataclass(frozen=True, eq=False)
class Approx:
    """Every interval strictly inside the conclusion is derived by ``family``."""
    conclusion: RatInterval
    family: Callable[[RatInterval], "Certificate"]
    description: str = ""


Certificate = Union[EtaR, Widen, Split, DiscardBelow, DiscardAbove, Approx]


def _chain(cover: Sequence[RatInterval], lo: Fraction, lo_strict: bool,
           hi: Fraction, hi_strict: bool) -> Optional[list[RatInterval]]:
    """A greedy chain of overlapping members running from ``lo`` to ``hi``."""
    def starts(iv):
        return iv.p < lo if lo_strict else iv.p <= lo

    def done(b):
        return hi < b if hi_strict else hi <= b

    first = [iv for iv in cover if starts(iv) and iv.q > lo]
    if not first:
        return None
    chain = [max(first, key=lambda iv: (iv.q, -iv.p))]
    while not done(chain[-1].q):
        reach = chain[-1].q
        nxt = [iv for iv in cover if iv.p < reach and iv.q > reach]
        if not nxt:
            return None
        chain.append(max(nxt, key=lambda iv: (iv.q, -iv.p)))
    return chain


def _leaf(t: RatInterval, member: RatInterval) -> Certificate:
    return EtaR(t) if t == member else Widen(t, member, EtaR(member))


def _certify_chain(t: RatInterval, chain: list[RatInterval]) -> Certificate:
    if len(chain) == 1:
        return _leaf(t, chain[0])
    first, second = chain[0], chain[1]
    lo, hi = max(second.p, t.p), min(first.q, t.q)
    p1, q1 = (3 * lo + hi) / 4, (lo + 3 * hi) / 4
    return Split(t, p1, q1, _leaf(RatInterval(t.p, q1), first),
                 _certify_chain(RatInterval(p1, t.q), chain[1:]))


def _outside_family(t: RatInterval, below: bool) -> Approx:
    make = DiscardBelow if below else DiscardAbove
    return Approx(t, make, "discard below 0" if below else "discard above 1")


def certify(mode: str, t: RatInterval, cover: Sequence[RatInterval]) -> Certificate:
    """A derivation of ``t <| cover`` built along a chain of overlapping members."""
    cover = list(cover)
    if not finite_cover_decide(mode, t, cover):
        raise NotCoverable(f"{t} is not covered", uncovered_point(mode, t, cover))
    if mode == R:
        return _certify_chain(t, _chain(cover, t.p, False, t.q, False))
    if t.q <= 0:
        return DiscardBelow(t) if t.q < 0 else _outside_family(t, True)
    if t.p >= 1:
        return DiscardAbove(t) if t.p > 1 else _outside_family(t, False)
    return _certify_unit(t, cover)


def _certify_unit(t: RatInterval, cover: list[RatInterval], left_done: bool = False) -> Certificate:
    if t.p < 0 and not left_done:
        # split off a piece lying below 0; the rest starts inside a member around 0
        first = _chain(cover, ZERO, True, ZERO, False)
        a0 = max(first[0].p, t.p)
        p1, q1 = 3 * a0 / 4, a0 / 4
        return Split(t, p1, q1, DiscardBelow(RatInterval(t.p, q1)),
                     _certify_unit(RatInterval(p1, t.q), cover, True))
    if t.q > 1:
        b0 = min(max(iv.q for iv in cover if iv.contains(ONE)), t.q)
        p2, q2 = 1 + (b0 - 1) / 4, 1 + 3 * (b0 - 1) / 4
        rest = RatInterval(t.p, q2)
        return Split(t, p2, q2, _certify_chain(rest, _chain(cover, t.p, False, q2, False)),
                     DiscardAbove(RatInterval(p2, t.q)))
    return _certify_chain(t, _chain(cover, t.p, False, t.q, False))


# -- the validator -----------------------------------------------------------

@dataclass(frozen=True)
class CertificateProblem:
    conclusion: RatInterval
    reason: str


def approximation_samples(t: RatInterval) -> list[RatInterval]:
    """A fixed family of intervals strictly inside ``t``, shrinking to its ends."""
    w = t.q - t.p
    out = []
    for k in (3, 4, 8, 64, 1024):
        for j in (1, 2):
            out.append(RatInterval(t.p + w / (j * k), t.q - w / ((3 - j) * k)))
    return out


def validate_certificate(mode: str, cert: Certificate, cover: Sequence[RatInterval],
                         expected: Optional[RatInterval] = None) -> Optional[CertificateProblem]:
    """Check every rule application locally; returns the first problem or ``None``.

    Approximation nodes are checked on :func:`approximation_samples`.
    """
    _check_mode(mode)
    members = set(cover)
    stack = [(cert, expected)]
    while stack:
        node, want = stack.pop()
        if not isinstance(node, (EtaR, Widen, Split, DiscardBelow, DiscardAbove, Approx)):
            return CertificateProblem(want, f"not a certificate node: {node!r}")
        t = node.conclusion
        if want is not None and t != want:
            return CertificateProblem(t, f"concludes {t} where {want} was required")
        if isinstance(node, EtaR):
            if t not in members:
                return CertificateProblem(t, "eta leaf is not a member of the cover")
        elif isinstance(node, Widen):
            if not t.leq(node.wider):
                return CertificateProblem(t, f"{node.wider} does not contain the conclusion")
            stack.append((node.child, node.wider))
        elif isinstance(node, Split):
            if not t.p < node.p1 < node.q1 < t.q:
                return CertificateProblem(t, "split points are not strictly ordered inside")
            stack.append((node.left, RatInterval(t.p, node.q1)))
            stack.append((node.right, RatInterval(node.p1, t.q)))
        elif isinstance(node, DiscardBelow):
            if mode != I01 or not t.q < 0:
                return CertificateProblem(t, "discard-below needs the unit interval and q < 0")
        elif isinstance(node, DiscardAbove):
            if mode != I01 or not 1 < t.p:
                return CertificateProblem(t, "discard-above needs the unit interval and 1 < p")
        else:
            for s in approximation_samples(t):
                stack.append((node.family(s), s))
    return None


def render_certificate(cert: Certificate, indent: int = 0) -> str:
    pad = "  " * indent
    t = cert.conclusion
    if isinstance(cert, EtaR):
        return f"{pad}eta {t}"
    if isinstance(cert, Widen):
        return f"{pad}widen {t} <= {cert.wider}\n" + render_certificate(cert.child, indent + 1)
    if isinstance(cert, Split):
        head = f"{pad}split {t} at {format_rational(cert.p1)} < {format_rational(cert.q1)}"
        return "\n".join([head, render_certificate(cert.left, indent + 1),
                          render_certificate(cert.right, indent + 1)])
    if isinstance(cert, DiscardBelow):
        return f"{pad}below-zero {t}"
    if isinstance(cert, DiscardAbove):
        return f"{pad}above-one {t}"
    return f"{pad}approx {t}: {cert.description}"


def certificate_to_json(cert: Certificate):
    t = [format_rational(cert.conclusion.p), format_rational(cert.conclusion.q)]
    if isinstance(cert, EtaR):
        return {"rule": "eta", "interval": t}
    if isinstance(cert, Widen):
        return {"rule": "widen", "interval": t,
                "wider": [format_rational(cert.wider.p), format_rational(cert.wider.q)],
                "child": certificate_to_json(cert.child)}
    if isinstance(cert, Split):
        return {"rule": "split", "interval": t, "at": [format_rational(cert.p1), format_rational(cert.q1)],
                "left": certificate_to_json(cert.left), "right": certificate_to_json(cert.right)}
    if isinstance(cert, DiscardBelow):
        return {"rule": "below-zero", "interval": t}
    if isinstance(cert, DiscardAbove):
        return {"rule": "above-one", "interval": t}
    return {"rule": "approx", "interval": t, "family": cert.description}


# -- enumerated covers and Heine-Borel ---------------------------------------

class EnumeratedCover:
    def __init__(self, fn: Callable[[int], RatInterval], name: str):
        self._fn = fn
        self.name = name

    def __call__(self, i: int) -> RatInterval:
        return self._fn(i)

    def prefix(self, k: int) -> list[RatInterval]:
        return [self(i) for i in range(k)]


def shrinking_cover() -> EnumeratedCover:
    """``(1/2, 2)`` and then ``(-1/(n+2), n/(n+2))`` for ``n >= 1``."""
    def fn(i):
        if i == 0:
            return interval(Fraction(1, 2), 2)
        return interval(Fraction(-1, i + 2), Fraction(i, i + 2))
    return EnumeratedCover(fn, "shrinking")


def inner_cover() -> EnumeratedCover:
    """``(1/(n+3), 1 - 1/(n+3))``: covers the open unit interval, never a
    neighbourhood of either end."""
    return EnumeratedCover(lambda n: interval(Fraction(1, n + 3), 1 - Fraction(1, n + 3)), "inner")


def constant_cover(iv: RatInterval) -> EnumeratedCover:
    return EnumeratedCover(lambda n: iv, f"constant:{format_rational(iv.p)},{format_rational(iv.q)}")


def list_cover(items: Sequence[RatInterval], name: str = "file") -> EnumeratedCover:
    """The listed intervals, then the last one repeated."""
    items = list(items)
    if not items:
        raise ParseError("an enumerated cover needs at least one interval")
    return EnumeratedCover(lambda n: items[min(n, len(items) - 1)], name)


def heine_borel(mode: str, t: RatInterval, cover: EnumeratedCover, fuel: int = 1000) -> list[RatInterval]:
    """The shortest prefix of the enumeration that covers ``t``, searching up to ``fuel`` members."""
    items: list = []
    for k in range(fuel):
        items.append(cover(k))
        if finite_cover_decide(mode, t, items):
            return items
    raise FuelExhausted(f"no prefix of {cover.name} of length <= {fuel} covers {t}")


# -- text forms --------------------------------------------------------------

_IV_RE = re.compile(r"^\(?\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)?$")


def parse_interval(text: str) -> RatInterval:
    """``p/q,r/s`` with optional parentheses."""
    m = _IV_RE.match(text.strip())
    if not m:
        raise ParseError(f"not an interval: {text!r}")
    return RatInterval(parse_rational(m.group(1)), parse_rational(m.group(2)))


def parse_target(text: str) -> RatInterval:
    """``p/q..r/s``."""
    if ".." not in text:
        raise ParseError(f"target must look like p/q..r/s, got {text!r}")
    a, b = text.split("..", 1)
    return RatInterval(parse_rational(a), parse_rational(b))


def parse_cover(text: str, source: str = "<cover>") -> list[RatInterval]:
    """One interval per line; blank lines and ``#`` comments are ignored."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_interval(line))
        except (ParseError, InvalidInterval) as exc:
            raise ParseError(str(exc), lineno, source) from exc
    return out


def parse_enumerated_cover(text: str) -> EnumeratedCover:
    """``shrinking``, ``inner``, ``constant:p/q,r/s`` or ``file:PATH``."""
    text = text.strip()
    if text == "shrinking":
        return shrinking_cover()
    if text == "inner":
        return inner_cover()
    if text.startswith("constant:"):
        return constant_cover(parse_interval(text[len("constant:"):]))
    if text.startswith("file:"):
        path = text[len("file:"):]
        try:
            with open(path, encoding="utf-8") as fh:
                return list_cover(parse_cover(fh.read(), path), text)
        except OSError as exc:
            raise ParseError(f"cannot read cover file: {exc}") from exc
    raise ParseError(f"unknown enumerated cover {text!r}")
