"""Spreads: decidable trees in which every node has an extension.

Includes the retraction of the Baire space onto a spread, the reduction of
relativised covers to Baire covers, and the uniform-depth search for bars of
the binary spread.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional

from .baire import (
    ChoiceStream,
    DecidableSubset,
    Derivation,
    Eta,
    Fan,
)
from .core import NIL, Seq, format_seq, level, parse_seq, prefixes, sequences
from .errors import DepthExhausted, FuelExhausted, InvalidSpread, ParseError

DEFAULT_FUEL = 10_000


class Spread:
    """An inhabited, prefix-closed, extendable decidable set of sequences.

    ``hint(a)`` may propose a digit ``n`` with ``a*n`` in the spread; it is
    used only to confirm extendability, never to choose retraction values.
    """

    def __init__(self, member: Callable[[Seq], bool], name: str = "U",
                 hint: Optional[Callable[[Seq], int]] = None):
        self._member = member
        self.name = name
        self.hint = hint

    def __contains__(self, a: Seq) -> bool:
        return bool(self._member(tuple(a)))

    def __repr__(self) -> str:
        return f"Spread({self.name})"

    def as_subset(self) -> DecidableSubset:
        return DecidableSubset(lambda a: a in self, self.name)

    def complement(self) -> DecidableSubset:
        return DecidableSubset(lambda a: a not in self, f"not({self.name})", monotone=True)

    def extension(self, a: Seq, search: int = DEFAULT_FUEL) -> int:
        """Some digit extending the member ``a``: the hint if valid, else the least one."""
        a = tuple(a)
        if self.hint is not None:
            n = self.hint(a)
            if a + (n,) in self:
                return n
        for n in range(search):
            if a + (n,) in self:
                return n
        raise InvalidSpread(f"{self.name}: no extension of {format_seq(a)} below {search}")

    def validate(self, max_length: int = 3, alphabet: int = 4, search: int = 1000) -> None:
        """Bounded check of the spread conditions on short sequences."""
        if NIL not in self:
            raise InvalidSpread(f"{self.name}: nil is not a member")
        for a in sequences(max_length, range(alphabet)):
            if a in self:
                if a and a[:-1] not in self:
                    raise InvalidSpread(f"{self.name}: {format_seq(a)} is a member but its parent is not")
                self.extension(a, search)

    # -- the generated family ---------------------------------------------

    @classmethod
    def binary(cls) -> Spread:
        return cls(lambda a: all(n < 2 for n in a), "binary", lambda a: 0)

    @classmethod
    def kary(cls, k: int) -> Spread:
        if k < 1:
            raise InvalidSpread("a k-ary spread needs k >= 1")
        return cls(lambda a: all(n < k for n in a), f"kary:{k}", lambda a: 0)

    @classmethod
    def min_entry(cls, c: int) -> Spread:
        return cls(lambda a: all(n >= c for n in a), f"min-entry:{c}", lambda a: c)

    @classmethod
    def parity(cls) -> Spread:
        """Entry ``i`` has the parity of ``i``."""
        return cls(lambda a: all(n % 2 == i % 2 for i, n in enumerate(a)), "parity",
                   lambda a: len(a) % 2)

    @classmethod
    def pseudorandom(cls, seed: int, width: int = 6) -> Spread:
        """Each node allows a seeded random set of digits below ``width``,
        always including one forced digit so that every node extends."""
        def allowed(head: Seq) -> frozenset:
            rng = random.Random(f"{seed}:{format_seq(head)}")
            forced = rng.randrange(width)
            return frozenset({forced} | {d for d in range(width) if rng.random() < 0.5})

        def member(a):
            return all(a[i] in allowed(a[:i]) for i in range(len(a)))

        return cls(member, f"pseudorandom:{seed}", lambda a: min(allowed(a)))

    @classmethod
    def from_table(cls, table: Mapping[Seq, bool], default: "Spread", name: str = "table") -> Spread:
        """Membership steps are read from ``table`` where listed and from
        ``default`` elsewhere; a sequence is a member when all its non-empty
        prefixes are allowed."""
        t = {tuple(k): bool(v) for k, v in table.items()}

        def member(a):
            return all(t.get(b, b in default) for b in prefixes(a) if b)

        return cls(member, name)


def generated_spreads(seeds: Iterable[int] = range(5)) -> list[Spread]:
    out = [Spread.binary(), Spread.kary(3), Spread.min_entry(2), Spread.min_entry(3), Spread.parity()]
    out += [Spread.pseudorandom(s) for s in seeds]
    return out


def parse_spread(text: str) -> Spread:
    """``binary``, ``kary:K``, ``min-entry:C``, ``parity``, ``pseudorandom:SEED``
    or ``table:PATH``."""
    text = text.strip()
    if text == "binary":
        return Spread.binary()
    if text == "parity":
        return Spread.parity()
    m = re.fullmatch(r"(kary|min-entry|pseudorandom):(\d+)", text)
    if m:
        k = int(m.group(2))
        return {"kary": Spread.kary, "min-entry": Spread.min_entry,
                "pseudorandom": Spread.pseudorandom}[m.group(1)](k)
    if text.startswith("table:"):
        path = text[len("table:"):]
        try:
            with open(path, encoding="utf-8") as fh:
                return parse_spread_table(fh.read(), path)
        except OSError as exc:
            raise ParseError(f"cannot read spread table: {exc}") from exc
    raise ParseError(f"unknown spread {text!r}")


def parse_spread_table(text: str, source: str = "<table>") -> Spread:
    """Lines ``[a] yes|no`` and one ``default: SPEC`` line; ``#`` starts a comment."""
    table = {}
    default = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("default:"):
            default = parse_spread(line[len("default:"):])
            continue
        m = re.fullmatch(r"(\[[^\]]*\])\s+(yes|no)", line)
        if not m:
            raise ParseError(f"expected '[a] yes|no', got {line!r}", lineno, source)
        a = parse_seq(m.group(1))
        if not a:
            raise ParseError("nil is always a member and cannot be listed", lineno, source)
        table[a] = m.group(2) == "yes"
    if default is None:
        raise ParseError("missing 'default:' line", None, source)
    spread = Spread.from_table(table, default, f"table:{source}")
    spread.validate()
    return spread


# -- the retraction ----------------------------------------------------------

def retract_seq(u: Spread, a: Seq, fuel: int = DEFAULT_FUEL) -> Seq:
    """The image of ``a`` under the retraction onto ``u``.

    Digit by digit: keep the digit when the extended sequence stays in the
    spread, otherwise use the least digit that does.
    """
    if NIL not in u:
        raise InvalidSpread(f"{u.name}: nil is not a member")
    b: Seq = NIL
    for n in tuple(a):
        if b + (n,) in u:
            b = b + (n,)
            continue
        for l in range(fuel):
            if b + (l,) in u:
                b = b + (l,)
                break
        else:
            raise FuelExhausted(f"{u.name}: no extension of {format_seq(b)} below {fuel}")
    return b


def retract_stream(u: Spread, alpha: ChoiceStream, fuel: int = DEFAULT_FUEL) -> ChoiceStream:
    """Entry ``i`` is the last entry of the retraction of ``alpha``'s prefix of length ``i+1``."""
    return ChoiceStream(lambda i: retract_seq(u, alpha.prefix(i + 1), fuel)[i],
                        f"retract({alpha.name},{u.name})")


@dataclass(frozen=True)
class RetractionCheck:
    prop: str
    instance: tuple


def retraction_properties(u: Spread, a: Seq, n: int) -> list[RetractionCheck]:
    """Check the retraction's defining properties at ``a`` and ``a*n``; returns failures.

    1. the result is determined by the input (two evaluations agree);
    2. ``a`` is a fixed point exactly when ``a`` is in the spread;
    3. lengths are preserved;
    4. ``a*n`` maps to some ``b*m`` with ``a`` mapping to ``b``;
    5. initial segments map to initial segments.
    Also checks that the image lies in the spread and is itself fixed.
    """
    a = tuple(a)
    fails = []
    r = retract_seq(u, a)
    if retract_seq(u, a) != r:
        fails.append(RetractionCheck("function", (a,)))
    if (r == a) != (a in u):
        fails.append(RetractionCheck("fixed-points", (a,)))
    if len(r) != len(a):
        fails.append(RetractionCheck("length", (a,)))
    ext = retract_seq(u, a + (n,))
    if ext[:-1] != r:
        fails.append(RetractionCheck("one-step", (a, n)))
    for k in range(len(a) + 1):
        if retract_seq(u, a[:k]) != r[:k]:
            fails.append(RetractionCheck("monotone", (a, k)))
            break
    if r not in u or retract_seq(u, r) != r:
        fails.append(RetractionCheck("idempotent", (a,)))
    return fails


# -- relativised covers ------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """``a <|_U V`` as the Baire problem ``a <| (not U) | V``."""

    conclusion: Seq
    target: DecidableSubset

    def eta(self) -> Optional[Derivation]:
        return Eta(self.conclusion) if self.conclusion in self.target else None


def relativized_cover_via_baire(u: Spread, a: Seq, v: DecidableSubset) -> Reduction:
    return Reduction(tuple(a), u.complement().union(v))


def relativized_level_derivation(u: Spread, a: Seq, n: int) -> Derivation:
    """``a <|_U {a*b | len b = n}``: fans over all naturals whose branches
    leaving the spread end at once in ``not U``."""
    a = tuple(a)
    if n == 0 or a not in u:
        return Eta(a)
    return Fan(a, lambda k: relativized_level_derivation(u, a + (k,), n - 1))


def relativized_level_target(u: Spread, a: Seq, n: int) -> DecidableSubset:
    a = tuple(a)
    v = DecidableSubset(lambda b: len(b) == len(a) + n and b[: len(a)] == a, f"{format_seq(a)}*level:{n}")
    return relativized_cover_via_baire(u, a, v).target


# -- uniform bars on the binary spread ---------------------------------------

def fan_uniform_depth(u: DecidableSubset, fuel_depth: int) -> int:
    """Least ``k <= fuel_depth`` such that every binary sequence of length ``k``
    has an initial segment in ``u``.

    Depth-first, so a single escaping path ends the search early.
    """
    deepest = 0
    stack = [NIL]
    while stack:
        c = stack.pop()
        if c in u:
            deepest = max(deepest, len(c))
            continue
        if len(c) >= fuel_depth:
            raise DepthExhausted(
                f"{u.name} is not a bar of the binary spread within depth {fuel_depth}; "
                f"{format_seq(c)} escapes")
        stack.append(c + (1,))
        stack.append(c + (0,))
    return deepest


def uniform_depth_holds(u: DecidableSubset, k: int) -> bool:
    """Re-check every binary path of length ``k`` independently."""
    return all(any(b in u for b in prefixes(c)) for c in level(k, (0, 1)))
