"""Relations between finite sequences and naturals, read as continuous maps
from choice sequences to naturals.

A relation is given by its fibers ``s{a}``: a total function from a finite
sequence to a finite set of naturals.  Evaluating it on a stream scans the
stream's prefixes for the first non-empty fiber.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional

from .baire import ChoiceStream, DecidableSubset, alpha_point
from .core import Seq, format_seq, j0, j1, pair, parse_seq, prefixes, sequences
from .errors import FuelExhausted, NotSingleValued, ParseError

DEFAULT_FUEL = 10_000


class SeqNatRelation:
    def __init__(self, fiber: Callable[[Seq], Iterable[int]], name: str = "s",
                 monotone: bool = False, single_valued: bool = False):
        self._fiber = fiber
        self.name = name
        self.monotone = monotone
        self.single_valued = single_valued

    def evaluate(self, a: Seq) -> frozenset:
        return frozenset(self._fiber(tuple(a)))

    __call__ = evaluate

    def __repr__(self) -> str:
        return f"SeqNatRelation({self.name})"

    def in_domain(self, a: Seq) -> bool:
        return bool(self.evaluate(a))

    @classmethod
    def first_entry(cls) -> SeqNatRelation:
        return cls(lambda a: {a[0]} if a else (), "first-entry", True, True)

    @classmethod
    def sum_first_k(cls, k: int) -> SeqNatRelation:
        return cls(lambda a: {sum(a[:k])} if len(a) >= k else (), f"sum-first-k:{k}", True, True)

    @classmethod
    def constant(cls, n: int) -> SeqNatRelation:
        return cls(lambda a: {n}, f"constant:{n}", True, True)

    @classmethod
    def empty(cls) -> SeqNatRelation:
        return cls(lambda a: (), "empty", True, True)

    @classmethod
    def from_table(cls, table: Mapping[Seq, Iterable[int]], name: str = "table") -> SeqNatRelation:
        t = {tuple(k): frozenset(v) for k, v in table.items()}
        return cls(lambda a: t.get(a, ()), name)

    def violations(self, samples: Iterable[Seq]) -> list:
        """Spot-check the claimed flags; returns ``(flag, sequence)`` failures."""
        out = []
        for a in samples:
            fa = self.evaluate(a)
            if self.single_valued and len(fa) > 1:
                out.append(("single-valued", a))
            if self.monotone:
                for b in prefixes(a):
                    if not self.evaluate(b) <= fa:
                        out.append(("monotone", a))
                        break
        return out


def monotonise(s: SeqNatRelation) -> SeqNatRelation:
    """Fiber at ``a`` becomes the union of the fibers at the prefixes of ``a``."""
    def fiber(a):
        out = set()
        for b in prefixes(a):
            out |= s.evaluate(b)
        return out
    return SeqNatRelation(fiber, f"mono({s.name})", monotone=True, single_valued=s.single_valued)


def modulus(s: SeqNatRelation, alpha: ChoiceStream, fuel: int = DEFAULT_FUEL) -> tuple[Seq, int]:
    """The first prefix of ``alpha`` with a non-empty fiber, and its value."""
    a: list = []
    for k in range(fuel + 1):
        if k:
            a.append(alpha(k - 1))
        fa = s.evaluate(tuple(a))
        if len(fa) > 1:
            raise NotSingleValued(tuple(a), fa)
        if fa:
            return tuple(a), next(iter(fa))
    raise FuelExhausted(f"{s.name}: no prefix of {alpha.name} up to length {fuel} is in the domain")


def eval_point(s: SeqNatRelation, alpha: ChoiceStream, fuel: int = DEFAULT_FUEL) -> int:
    return modulus(s, alpha, fuel)[1]


@dataclass(frozen=True)
class PFunctionReport:
    single_valued: bool
    multi_valued_at: Optional[tuple]  # (sequence, values)
    bar_confirmed: bool
    bar_depth: Optional[int]
    alphabet: tuple
    depth: int

    @property
    def bar_status(self) -> str:
        return f"bar confirmed at depth {self.bar_depth}" if self.bar_confirmed else "bar-not-confirmed"


def check_pfunction_conditions(s: SeqNatRelation, depth: int,
                               alphabet: Optional[Iterable[int]] = None) -> PFunctionReport:
    """Bounded check that ``s`` is a partial function whose domain is a bar.

    Single-valuedness is checked on every sequence of length at most ``depth``
    with entries below ``depth``.  The bar condition can only be confirmed
    over a finite alphabet (default ``{0, 1}``): the reported depth is the
    least ``k`` such that every path of length ``k`` meets the domain.
    """
    letters = tuple(sorted(set(alphabet))) if alphabet is not None else (0, 1)
    multi = None
    for a in sequences(depth, range(max(depth, 1))):
        fa = s.evaluate(a)
        if len(fa) > 1:
            multi = (a, tuple(sorted(fa)))
            break
    bar_depth = None
    frontier = [()]
    for k in range(depth + 1):
        frontier = [a for a in frontier if not s.in_domain(a)]
        if not frontier:
            bar_depth = k
            break
        if k < depth:
            frontier = [a + (n,) for a in frontier for n in letters]
    return PFunctionReport(multi is None, multi, bar_depth is not None, bar_depth, letters, depth)


# -- Sigma-0-1 and Pi-0-1 presentations --------------------------------------

@dataclass(frozen=True)
class Sigma01Presentation:
    """``a`` is a member iff ``D(a, n)`` for some ``n``."""

    decide: Callable[[Seq, int], bool]
    name: str = "D"

    def witness(self, a: Seq, bound: int) -> Optional[int]:
        return next((n for n in range(bound) if self.decide(tuple(a), n)), None)


@dataclass(frozen=True)
class Pi01Presentation:
    """``a`` is a member iff ``D(a, n)`` for every ``n``."""

    decide: Callable[[Seq, int], bool]
    name: str = "D"

    def refute(self, a: Seq, bound: int) -> Optional[int]:
        """An ``n < bound`` with ``not D(a, n)``, or ``None``."""
        return next((n for n in range(bound) if not self.decide(tuple(a), n)), None)

    def member_to(self, a: Seq, bound: int) -> bool:
        return self.refute(a, bound) is None


def sigma_to_decidable_bar(p: Sigma01Presentation) -> DecidableSubset:
    """``V(a)`` iff ``D(a restricted to j0(len a), j1(len a))``.

    The coding satisfies ``j0(c) <= c``, so the initial segment always exists.
    """
    def member(a):
        c = len(a)
        k = j0(c)
        assert k <= c, "pair coding lost dominance"
        return bool(p.decide(a[:k], j1(c)))
    return DecidableSubset(member, f"bar({p.name})")


@dataclass(frozen=True)
class BarTransfer:
    u_hit: Optional[tuple]  # (k, n): prefix length hitting U and the witness
    v_hit: Optional[int]  # first prefix length hitting V
    bound: Optional[int]  # pair(k, n)

    @property
    def ok(self) -> bool:
        return self.u_hit is None or (self.v_hit is not None and self.v_hit <= self.bound)


def sigma_bar_transfer(p: Sigma01Presentation, alpha: ChoiceStream,
                       max_length: int, max_witness: int) -> BarTransfer:
    """Where ``alpha`` first meets ``U`` (searched within the given bounds) and
    where it first meets the decidable bar, which must be no later than
    ``pair(k, n)``."""
    v = sigma_to_decidable_bar(p)
    hit = None
    for k in range(max_length + 1):
        n = p.witness(alpha.prefix(k), max_witness)
        if n is not None:
            hit = (k, n)
            break
    if hit is None:
        return BarTransfer(None, None, None)
    bound = pair(*hit)
    first = next((m for m in range(bound + 1) if alpha.prefix(m) in v), None)
    return BarTransfer(hit, first, bound)


@dataclass(frozen=True)
class DomainVerdict:
    refuted: bool
    bound: int
    checked: int
    witness: Optional[Seq] = None
    values: Optional[tuple] = None  # (value at alpha_a, value at alpha_{a*b})


def pi01_domain_refuter(s: SeqNatRelation, a: Seq, bound: int, fuel: int = DEFAULT_FUEL) -> DomainVerdict:
    """Search for ``b`` (length and entries below ``bound``) on which the value
    at the zero-padded extension of ``a*b`` differs from the one at ``a``."""
    a = tuple(a)
    base = eval_point(s, alpha_point(a), fuel)
    checked = 0
    for b in sequences(bound, range(bound)):
        checked += 1
        v = eval_point(s, alpha_point(a + b), fuel)
        if v != base:
            return DomainVerdict(True, bound, checked, b, (base, v))
    return DomainVerdict(False, bound, checked)


def pi01_modulus(s: SeqNatRelation, bound: int, fuel: int = DEFAULT_FUEL) -> SeqNatRelation:
    """The modulus relation with its universally quantified domain cut off at
    ``bound``: ``a s' n`` iff the refuter finds nothing and ``n`` is the value
    at the zero-padded extension of ``a``."""
    def fiber(a):
        if pi01_domain_refuter(s, a, bound, fuel).refuted:
            return ()
        return {eval_point(s, alpha_point(a), fuel)}
    return SeqNatRelation(fiber, f"modulus({s.name},{bound})", monotone=True, single_valued=True)


# -- the Pi-0-1 bar constructions -------------------------------------------

@dataclass(frozen=True)
class BarConstructions:
    dbar: Callable[[Seq], bool]
    ubar: Pi01Presentation
    s: SeqNatRelation
    horizon: int


def pi01_bar_constructions(p: Pi01Presentation, horizon: int = 16) -> BarConstructions:
    """The three constructions over a Pi-0-1 presentation ``D`` of ``U``:

    * ``Dbar(a)``: if ``a`` is non-empty then ``D(head a, last a)``;
    * ``Ubar(a)``: ``U(a)`` and ``Dbar(a)``, again Pi-0-1;
    * ``a s n``: ``Ubar(a)`` and either ``n < len a`` is a failing index of
      ``Dbar`` with every larger index below ``len a`` passing, or every index
      below ``len a`` passes and ``n = 1``.

    ``Ubar`` can only be refuted, so ``s`` consults it up to ``horizon``.
    """
    def dbar(a: Seq) -> bool:
        a = tuple(a)
        return len(a) == 0 or bool(p.decide(a[:-1], a[-1]))

    ubar = Pi01Presentation(lambda a, n: bool(p.decide(a, n)) and dbar(a), f"Ubar({p.name})")

    def fiber(a):
        if not ubar.member_to(a, horizon):
            return ()
        passes = [dbar(a[:m]) for m in range(len(a))]
        vals = {n for n in range(len(a)) if not passes[n] and all(passes[n + 1:])}
        if all(passes):
            vals.add(1)
        return vals

    s = SeqNatRelation(fiber, f"s({p.name})", monotone=True, single_valued=True)
    return BarConstructions(dbar, ubar, s, horizon)


def sbar_prime(s_prime: SeqNatRelation) -> SeqNatRelation:
    """``a sbar' n`` iff ``n < len a`` and some initial segment of ``a`` relates to ``n``."""
    def fiber(a):
        out = set()
        for b in prefixes(a):
            out |= {n for n in s_prime.evaluate(b) if n < len(a)}
        return out
    return SeqNatRelation(fiber, f"sbar'({s_prime.name})", monotone=True)


# -- text forms --------------------------------------------------------------

def parse_relation(text: str) -> SeqNatRelation:
    """``first-entry``, ``sum-first-k:K``, ``constant:N``, ``empty`` or ``table:PATH``."""
    text = text.strip()
    if text == "first-entry":
        return SeqNatRelation.first_entry()
    if text == "empty":
        return SeqNatRelation.empty()
    if text.startswith("table:"):
        path = text[len("table:"):]
        try:
            with open(path, encoding="utf-8") as fh:
                return parse_fiber_table(fh.read(), path)
        except OSError as exc:
            raise ParseError(f"cannot read relation table: {exc.strerror}", None, path) from exc
    for prefix, make in (("sum-first-k:", SeqNatRelation.sum_first_k),
                         ("constant:", SeqNatRelation.constant)):
        if text.startswith(prefix):
            arg = text[len(prefix):]
            if not arg.isdigit():
                raise ParseError(f"bad argument in relation {text!r}")
            return make(int(arg))
    raise ParseError(f"unknown relation {text!r}")


_FIBER_RE = re.compile(r"^(\[[^\]]*\])\s*->\s*(\d+)$")


def parse_fiber_table(text: str, source: str = "<table>") -> SeqNatRelation:
    """Lines ``[a] -> n``; sequences not listed have an empty fiber."""
    table: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _FIBER_RE.match(line)
        if not m:
            raise ParseError(f"expected '[a] -> n', got {line!r}", lineno, source)
        try:
            a = parse_seq(m.group(1))
        except ParseError as exc:
            raise ParseError(str(exc), lineno, source) from exc
        table.setdefault(a, set()).add(int(m.group(2)))
    return SeqNatRelation.from_table(table, f"table:{source}")


def parse_sigma_presentation(text: str) -> Sigma01Presentation:
    """Named presentations ``D(a, n)``:

    ``length-at-least:K``  ``len a >= K``
    ``entry-equals:V``     ``n < len a`` and ``a[n] == V``
    ``sum-at-least:T``     ``sum a >= T`` and ``n == 0``
    ``always`` / ``never``
    """
    text = text.strip()
    if text == "always":
        return Sigma01Presentation(lambda a, n: True, "always")
    if text == "never":
        return Sigma01Presentation(lambda a, n: False, "never")
    m = re.fullmatch(r"(length-at-least|entry-equals|sum-at-least):(\d+)", text)
    if not m:
        raise ParseError(f"unknown presentation {text!r}")
    k = int(m.group(2))
    decide = {
        "length-at-least": lambda a, n: len(a) >= k,
        "entry-equals": lambda a, n: n < len(a) and a[n] == k,
        "sum-at-least": lambda a, n: sum(a) >= k and n == 0,
    }[m.group(1)]
    return Sigma01Presentation(decide, text)


def format_fiber_table(s: SeqNatRelation, seqs: Iterable[Seq]) -> str:
    lines = []
    for a in seqs:
        for n in sorted(s.evaluate(a)):
            lines.append(f"{format_seq(a)} -> {n}")
    return "\n".join(lines)
