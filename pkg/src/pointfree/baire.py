"""The formal Baire space: cover derivations, their checking and
zeta-elimination, decidable subsets, choice sequences and splitting.

A derivation of ``a <| U`` is a tree of three node kinds:

* ``Eta(a)`` -- ``a`` is in ``U``;
* ``Zeta(a, b, d)`` -- ``b`` is an initial segment of ``a`` and ``d`` derives ``b <| U``;
* ``Fan(a, branch)`` -- ``branch(n)`` derives ``a*n <| U`` for every ``n``.

Fan branches are functions, so a tree over infinite branching is only ever
inspected along chosen probe paths.  On the binary fragment (the Cantor
space) fans have two branches and trees can be checked exhaustively.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Union

from .core import NIL, Seq, format_seq, leq_b, parse_seq, prefixes, sequences
from .errors import DepthExhausted, FuelExhausted, MalformedTree, ParseError

DEFAULT_FUEL = 10_000


# -- decidable subsets -------------------------------------------------------

class DecidableSubset:
    """A subset of finite sequences given by a total membership test.

    ``max_length``, when known, bounds the length of members; it lets cover
    questions on the binary fragment be decided exactly.
    """

    def __init__(self, member: Callable[[Seq], bool], name: str = "",
                 monotone: bool = False, max_length: Optional[int] = None):
        self._member = member
        self.name = name or getattr(member, "__name__", "U")
        self.monotone = monotone
        self.max_length = max_length

    def __contains__(self, a: Seq) -> bool:
        return bool(self._member(tuple(a)))

    def __call__(self, a: Seq) -> bool:
        return a in self

    def __repr__(self) -> str:
        return f"DecidableSubset({self.name})"

    @classmethod
    def finite(cls, members: Iterable[Seq], name: str = "") -> DecidableSubset:
        ms = frozenset(tuple(m) for m in members)
        bound = max((len(m) for m in ms), default=0)
        label = name or "{" + ";".join(sorted(format_seq(m) for m in ms)) + "}"
        return cls(ms.__contains__, label, max_length=bound)

    @classmethod
    def level(cls, k: int) -> DecidableSubset:
        return cls(lambda a: len(a) == k, f"level:{k}", max_length=k)

    @classmethod
    def min_length(cls, k: int) -> DecidableSubset:
        return cls(lambda a: len(a) >= k, f"min-length:{k}", monotone=True)

    @classmethod
    def max_length_set(cls, k: int) -> DecidableSubset:
        return cls(lambda a: len(a) <= k, f"max-length:{k}", max_length=k)

    @classmethod
    def everything(cls) -> DecidableSubset:
        return cls(lambda a: True, "all", monotone=True)

    @classmethod
    def nothing(cls) -> DecidableSubset:
        return cls(lambda a: False, "empty", monotone=True, max_length=0)

    def closure(self) -> DecidableSubset:
        """``down U``: sequences with some initial segment in ``U``."""
        return DecidableSubset(lambda a: monotone_closure_member(self, a),
                               f"down({self.name})", monotone=True, max_length=None)

    def union(self, other: DecidableSubset) -> DecidableSubset:
        bound = None
        if self.max_length is not None and other.max_length is not None:
            bound = max(self.max_length, other.max_length)
        return DecidableSubset(lambda a: a in self or a in other,
                               f"{self.name}|{other.name}", max_length=bound)

    def complement(self) -> DecidableSubset:
        return DecidableSubset(lambda a: a not in self, f"not({self.name})")

    def is_monotone_on(self, samples: Iterable[Seq]) -> bool:
        """Spot check: members stay members under extension, on the given samples."""
        for a in samples:
            for b in prefixes(a):
                if b in self and a not in self:
                    return False
        return True


def monotone_closure_member(u: DecidableSubset, a: Seq) -> bool:
    return any(b in u for b in prefixes(tuple(a)))


def cover_singleton(a: Seq, b: Seq) -> bool:
    """``a <| {b}`` holds exactly when ``b`` is an initial segment of ``a``."""
    return leq_b(tuple(a), tuple(b))


def complement_member(a: Seq, b: Seq) -> bool:
    """Membership in ``C_a``: same length as ``a`` but different."""
    return len(b) == len(a) and tuple(b) != tuple(a)


def complement_set(a: Seq) -> DecidableSubset:
    a = tuple(a)
    return DecidableSubset(lambda b: complement_member(a, b), f"C{format_seq(a)}", max_length=len(a))


# -- derivations -------------------------------------------------------------

@dataclass(frozen=True)
class Eta:
    conclusion: Seq


@dataclass(frozen=True)
class Zeta:
    conclusion: Seq
    premise: Seq
    child: "Derivation"


@dataclass(frozen=True, eq=False)
class Fan:
    """``branch(n)`` derives ``conclusion*n``.

    ``arity`` is ``None`` for branching over all naturals and ``2`` on the
    binary fragment.  ``table``/``default`` record a finite presentation when
    one exists, so the node can be written out.
    """

    conclusion: Seq
    branch: Callable[[int], "Derivation"] = field(repr=False)
    arity: Optional[int] = None
    table: Optional[tuple] = field(default=None, repr=False)
    default: Optional[str] = None

    def child(self, n: int) -> "Derivation":
        try:
            d = self.branch(n)
        except MalformedTree:
            raise
        except Exception as exc:
            raise MalformedTree(f"fan at {format_seq(self.conclusion)}: branch {n} failed: {exc}") from exc
        if not isinstance(d, (Eta, Zeta, Fan)):
            raise MalformedTree(f"fan at {format_seq(self.conclusion)}: branch {n} is not a derivation")
        return d


Derivation = Union[Eta, Zeta, Fan]


def _node(d) -> Derivation:
    if not isinstance(d, (Eta, Zeta, Fan)):
        raise MalformedTree(f"not a derivation node: {d!r}")
    return d


@dataclass(frozen=True)
class Violation:
    path: tuple  # branch choices taken from the root
    conclusion: Seq
    reason: str


@dataclass(frozen=True)
class Verdict:
    """Result of checking a derivation.

    ``exhaustive`` is true only when every node of the tree was visited; a
    tree containing an infinitely branching fan can only be probed.
    """

    ok: bool
    exhaustive: bool
    probed: tuple
    violation: Optional[Violation] = None
    nodes: int = 0

    def describe(self) -> str:
        if not self.ok:
            v = self.violation
            return f"violation at {format_seq(v.conclusion)} (path {list(v.path)}): {v.reason}"
        if self.exhaustive:
            return "valid (exhaustive)"
        return f"locally-valid along {len(self.probed)} probe(s)"


def _local(node: Derivation, expected: Optional[Seq], u: DecidableSubset, allow_zeta: bool) -> Optional[str]:
    if expected is not None and tuple(node.conclusion) != tuple(expected):
        return f"conclusion {format_seq(node.conclusion)} where {format_seq(expected)} was required"
    if isinstance(node, Eta):
        if node.conclusion not in u:
            return f"eta leaf {format_seq(node.conclusion)} is not in {u.name}"
    elif isinstance(node, Zeta):
        if not allow_zeta:
            return "zeta node in a derivation that may use eta and fan only"
        if not leq_b(node.conclusion, node.premise):
            return f"zeta premise {format_seq(node.premise)} is not an initial segment"
    return None


def check_derivation(d: Derivation, u: DecidableSubset, probes: Iterable[Seq] = (),
                     allow_zeta: bool = True, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Check node-local side conditions along each probe path.

    At a fan concluding ``c`` the probe ``p`` is followed into branch
    ``p[len(c)]`` when ``c`` is a proper initial segment of ``p``; otherwise
    the walk along that probe stops there.  Eta and zeta nodes are always
    walked through.
    """
    probes = tuple(tuple(p) for p in probes) or (NIL,)
    exhaustive = True
    nodes = 0
    for p in probes:
        node, expected, path, steps = _node(d), None, (), 0
        while True:
            nodes += 1
            reason = _local(node, expected, u, allow_zeta)
            if reason:
                return Verdict(False, False, probes, Violation(path, node.conclusion, reason), nodes)
            if isinstance(node, Eta):
                break
            if isinstance(node, Zeta):
                node, expected = _node(node.child), node.premise
                continue
            c = tuple(node.conclusion)
            if node.arity is None:
                exhaustive = False
            if not (len(p) > len(c) and p[: len(c)] == c):
                exhaustive = False
                break
            n = p[len(c)]
            if node.arity is not None and n >= node.arity:
                break
            steps += 1
            if steps > fuel:
                raise FuelExhausted(f"more than {fuel} fan steps along probe {format_seq(p)}")
            node, expected, path = node.child(n), c + (n,), path + (n,)
    return Verdict(True, exhaustive, probes, None, nodes)


def check_binary(d: Derivation, u: DecidableSubset, depth: int, allow_zeta: bool = True) -> Verdict:
    """Exhaustively check a derivation whose fans branch on ``{0, 1}``.

    Every path is followed to its leaf.  A fan whose conclusion has length
    ``depth`` or more is a hard :class:`DepthExhausted` error.
    """
    stack = [(_node(d), None, ())]
    nodes = 0
    while stack:
        node, expected, path = stack.pop()
        nodes += 1
        reason = _local(node, expected, u, allow_zeta)
        if reason:
            return Verdict(False, True, (), Violation(path, node.conclusion, reason), nodes)
        if isinstance(node, Zeta):
            stack.append((_node(node.child), node.premise, path))
        elif isinstance(node, Fan):
            c = tuple(node.conclusion)
            if len(c) >= depth:
                raise DepthExhausted(f"fan at {format_seq(c)} lies beyond depth {depth}")
            for n in (1, 0):
                stack.append((node.child(n), c + (n,), path + (n,)))
    return Verdict(True, True, (), None, nodes)


def zeta_eliminate(d: Derivation) -> Derivation:
    """Turn a derivation of ``a <| U`` into one of ``a <| down U`` without zeta.

    Fans are mapped branch by branch as branches are requested.  A zeta node
    concluding ``a`` from ``b`` is replaced by the eliminated derivation of
    ``b`` followed down to ``a``: through the fan branches that ``a`` selects,
    or by an eta leaf once an eta leaf is met (``a`` then lies in ``down U``
    because ``b`` does).
    """
    d = _node(d)
    if isinstance(d, Eta):
        return d
    if isinstance(d, Fan):
        inner = d
        return Fan(d.conclusion, lambda n: zeta_eliminate(inner.child(n)), d.arity, None, None)
    return _restrict(zeta_eliminate(_node(d.child)), tuple(d.conclusion))


def _restrict(e: Derivation, a: Seq) -> Derivation:
    while True:
        c = tuple(e.conclusion)
        if not leq_b(a, c):
            raise MalformedTree(f"cannot restrict a derivation of {format_seq(c)} to {format_seq(a)}")
        if c == a:
            return e
        if isinstance(e, Eta):
            return Eta(a)
        if isinstance(e, Zeta):
            raise MalformedTree("zeta node left after elimination")
        e = e.child(a[len(c)])


def level_derivation(a: Seq, n: int, arity: Optional[int] = None) -> Derivation:
    """``a <| {a*b | len(b) = n}``: ``n`` fan layers over eta leaves."""
    a = tuple(a)
    if n == 0:
        return Eta(a)
    return Fan(a, lambda k: level_derivation(a + (k,), n - 1, arity), arity,
               None, f"level:{n - 1}")


# -- choice sequences --------------------------------------------------------

class ChoiceStream:
    """A total function from indices to naturals, read through its prefixes."""

    def __init__(self, fn: Callable[[int], int], name: str = "stream"):
        self._fn = fn
        self.name = name

    def __call__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        v = self._fn(i)
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"stream {self.name} produced {v!r} at {i}")
        return v

    def prefix(self, k: int) -> Seq:
        return tuple(self(i) for i in range(k))

    def passes_through(self, a: Seq) -> bool:
        return self.prefix(len(a)) == tuple(a)

    def __repr__(self) -> str:
        return f"ChoiceStream({self.name})"


def alpha_point(a: Seq) -> ChoiceStream:
    """The stream that follows ``a`` and continues with zeros."""
    a = tuple(a)
    return ChoiceStream(lambda i: a[i] if i < len(a) else 0, f"zeros-after:{format_seq(a)}")


def periodic(p: Seq) -> ChoiceStream:
    p = tuple(p)
    if not p:
        raise ValueError("a periodic stream needs a non-empty period")
    return ChoiceStream(lambda i: p[i % len(p)], f"periodic:{format_seq(p)}")


def table_stream(prefix: Seq, const: Optional[int] = None, repeat: bool = False) -> ChoiceStream:
    """An explicit prefix followed by a constant, or by the prefix repeated."""
    prefix = tuple(prefix)
    if repeat:
        if not prefix:
            raise ValueError("cannot repeat an empty table")
        return ChoiceStream(lambda i: prefix[i % len(prefix)], f"table:{format_seq(prefix)}+repeat")
    c = 0 if const is None else const
    return ChoiceStream(lambda i: prefix[i] if i < len(prefix) else c,
                        f"table:{format_seq(prefix)}+const:{c}")


def random_stream(seed, bound: int = 10, head: Seq = NIL) -> ChoiceStream:
    """A pure pseudorandom stream: entry ``i`` depends only on ``(seed, i)``."""
    head = tuple(head)

    def fn(i):
        if i < len(head):
            return head[i]
        return random.Random(f"{seed}:{i}").randrange(bound)

    suffix = f"@{format_seq(head)}" if head else ""
    return ChoiceStream(fn, f"random:{seed}{suffix}")


_TABLE_RE = re.compile(r"^table:(\[[^\]]*\])\+(?:const:(\d+)|(repeat))$")


def parse_stream(text: str) -> ChoiceStream:
    text = text.strip()
    try:
        if text.startswith("zeros-after:"):
            return alpha_point(parse_seq(text[len("zeros-after:"):]))
        if text.startswith("periodic:"):
            return periodic(parse_seq(text[len("periodic:"):]))
        m = _TABLE_RE.match(text)
        if m:
            return table_stream(parse_seq(m.group(1)),
                                int(m.group(2)) if m.group(2) else None, bool(m.group(3)))
        if text.startswith("random:"):
            return random_stream(int(text[len("random:"):]))
    except ValueError as exc:
        raise ParseError(f"bad stream {text!r}: {exc}") from exc
    raise ParseError(f"unknown stream form {text!r}")


def split_cover(alpha: ChoiceStream, d: Derivation, u: DecidableSubset,
                fuel: int = DEFAULT_FUEL) -> Seq:
    """Follow ``alpha`` through ``d`` and return a prefix of ``alpha`` lying in ``U``.

    Each fan step consumes one unit of fuel.
    """
    node = _node(d)
    if not alpha.passes_through(node.conclusion):
        raise ValueError(f"{alpha.name} does not pass through {format_seq(node.conclusion)}")
    spent = 0
    while True:
        if isinstance(node, Eta):
            a = tuple(node.conclusion)
            if a not in u:
                raise MalformedTree(f"eta leaf {format_seq(a)} is not in {u.name}")
            return a
        if isinstance(node, Zeta):
            if not leq_b(node.conclusion, node.premise):
                raise MalformedTree(f"zeta premise {format_seq(node.premise)} is not an initial segment")
            child = _node(node.child)
            if tuple(child.conclusion) != tuple(node.premise):
                raise MalformedTree("zeta child concludes the wrong sequence")
            node = child
            continue
        if spent >= fuel:
            raise FuelExhausted(f"fan tower deeper than {fuel} along {alpha.name}")
        spent += 1
        c = tuple(node.conclusion)
        n = alpha(len(c))
        child = node.child(n)
        if tuple(child.conclusion) != c + (n,):
            raise MalformedTree(f"fan branch {n} at {format_seq(c)} concludes the wrong sequence")
        node = child


@dataclass(frozen=True)
class BoundedVerdict:
    consistent: bool
    depth: int
    failure_at: Optional[int] = None
    failing_prefix: Optional[Seq] = None


def enters_positivity_bounded(alpha: ChoiceStream, u: DecidableSubset, depth: int) -> BoundedVerdict:
    """Check that ``alpha`` stays in ``U`` for its prefixes of length ``0..depth``.

    A failure refutes the claim that ``alpha`` witnesses positivity on ``U``;
    success only confirms it up to the given depth.
    """
    for k in range(depth + 1):
        a = alpha.prefix(k)
        if a not in u:
            return BoundedVerdict(False, depth, k, a)
    return BoundedVerdict(True, depth)


# -- the binary fragment -----------------------------------------------------

def binary_cover_decide(a: Seq, u: DecidableSubset, horizon: Optional[int] = None) -> bool:
    """Decide ``a <| U`` in the Cantor space.

    True when every binary extension of ``a`` of length ``horizon`` has an
    initial segment in ``U``.  This is exact once ``horizon`` bounds the
    length of the binary members of ``U``.
    """
    a = tuple(a)
    h = _horizon(a, u, horizon)
    if any(b in u for b in prefixes(a)):
        return True
    stack = [a]
    while stack:
        c = stack.pop()
        if c in u:
            continue
        if len(c) >= h:
            return False
        stack.append(c + (1,))
        stack.append(c + (0,))
    return True


def _horizon(a: Seq, u: DecidableSubset, horizon: Optional[int]) -> int:
    if horizon is None:
        if u.max_length is None:
            raise ValueError(f"{u.name} has no length bound; give a horizon")
        horizon = u.max_length
    return max(horizon, len(a))


def binary_derivation(a: Seq, u: DecidableSubset, horizon: Optional[int] = None,
                      style: str = "lift") -> Optional[Derivation]:
    """Build a binary-fragment derivation of ``a <| U``, or ``None`` if there is none.

    ``style="lift"`` first climbs with a zeta node to the shortest covered
    initial segment of ``a`` and derives that one with fans and eta leaves;
    ``"pad"`` additionally expands every eta leaf ``c`` into a fan whose
    branches go back to ``c`` with zeta.  ``"plain"`` uses no zeta at all
    below a covered member.
    """
    a = tuple(a)
    h = _horizon(a, u, horizon)
    if not binary_cover_decide(a, u, h):
        return None
    top = next(b for b in prefixes(a) if binary_cover_decide(b, u, h))

    def down(c: Seq) -> Derivation:
        if c in u:
            if style == "pad":
                leaf = Eta(c)
                return Fan(c, lambda n: _binary_only(n) or Zeta(c + (n,), c, leaf), 2)
            return Eta(c)
        kids = {0: down(c + (0,)), 1: down(c + (1,))}
        return Fan(c, lambda n: _binary_only(n) or kids[n], 2, ((0, kids[0]), (1, kids[1])), None)

    if style == "plain" or top == a:
        # an initial segment of ``a`` may itself lie in U
        member = next((b for b in prefixes(a) if b in u), None)
        if member is not None and member != a:
            return Zeta(a, member, Eta(member))
        return down(a)
    return Zeta(a, top, down(top))


def _binary_only(n: int):
    if n not in (0, 1):
        raise MalformedTree(f"branch {n} outside the binary fragment")
    return None


def binary_probes(depth: int) -> Iterator[Seq]:
    yield from sequences(depth, (0, 1))


def level_truth_table_sets(k: int, alphabet=(0, 1)) -> Iterator[DecidableSubset]:
    """Every subset of the sequences of length exactly ``k`` over ``alphabet``."""
    seqs = list(sequences(k, alphabet))[-(len(alphabet) ** k):]
    for code in range(1 << len(seqs)):
        members = frozenset(s for i, s in enumerate(seqs) if code >> i & 1)
        yield DecidableSubset(members.__contains__, f"level{k}#{code}", max_length=k)


def bounded_truth_table_sets(k: int, alphabet=(0, 1)) -> Iterator[DecidableSubset]:
    """Every subset of the sequences of length at most ``k`` over ``alphabet``."""
    seqs = list(sequences(k, alphabet))
    for code in range(1 << len(seqs)):
        members = frozenset(s for i, s in enumerate(seqs) if code >> i & 1)
        yield DecidableSubset(members.__contains__, f"upto{k}#{code}", max_length=k)


# -- finite certificate text form --------------------------------------------
#
#   ["eta", [2]]
#   ["zeta", [3], [], <child>]
#   ["fan", [1], [[0, <child>], [1, <child>]], "eta" | "level:k" | null]
#
# A fan's default rule covers the branches missing from its table; with a
# null default, probing a missing branch is a malformed-tree error.

def derivation_to_json(d: Derivation):
    d = _node(d)
    if isinstance(d, Eta):
        return ["eta", list(d.conclusion)]
    if isinstance(d, Zeta):
        return ["zeta", list(d.conclusion), list(d.premise), derivation_to_json(d.child)]
    if d.table is None and d.default is None:
        raise MalformedTree(f"fan at {format_seq(d.conclusion)} has no finite presentation")
    table = [[n, derivation_to_json(c)] for n, c in (d.table or ())]
    return ["fan", list(d.conclusion), table, d.default]


def _seq_of(x, where) -> Seq:
    if not isinstance(x, list) or not all(isinstance(n, int) and n >= 0 for n in x):
        raise MalformedTree(f"{where}: expected a list of naturals, got {x!r}")
    return tuple(x)


def _default_rule(rule, c: Seq) -> Callable[[int], Derivation]:
    if rule is None:
        def missing(n):
            raise MalformedTree(f"fan at {format_seq(c)} has no branch {n}")
        return missing
    if rule == "eta":
        return lambda n: Eta(c + (n,))
    m = re.fullmatch(r"level:(\d+)", str(rule))
    if m:
        k = int(m.group(1))
        return lambda n: level_derivation(c + (n,), k)
    raise MalformedTree(f"unknown fan default {rule!r}")


def derivation_from_json(obj) -> Derivation:
    if not isinstance(obj, list) or not obj:
        raise MalformedTree(f"expected a tagged list, got {obj!r}")
    tag = obj[0]
    if tag == "eta" and len(obj) == 2:
        return Eta(_seq_of(obj[1], "eta"))
    if tag == "zeta" and len(obj) == 4:
        return Zeta(_seq_of(obj[1], "zeta"), _seq_of(obj[2], "zeta premise"), derivation_from_json(obj[3]))
    if tag == "fan" and len(obj) == 4:
        c = _seq_of(obj[1], "fan")
        if not isinstance(obj[2], list):
            raise MalformedTree("fan table must be a list")
        table = {}
        for entry in obj[2]:
            if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], int) and entry[0] >= 0):
                raise MalformedTree(f"bad fan table entry {entry!r}")
            if entry[0] in table:
                raise MalformedTree(f"duplicate fan branch {entry[0]}")
            table[entry[0]] = derivation_from_json(entry[1])
        fallback = _default_rule(obj[3], c)
        return Fan(c, lambda n: table[n] if n in table else fallback(n), None,
                   tuple(sorted(table.items())), obj[3])
    raise MalformedTree(f"unknown or malformed node {obj!r}")


def dumps_derivation(d: Derivation) -> str:
    return json.dumps(derivation_to_json(d), separators=(",", ":"))


def loads_derivation(text: str) -> Derivation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTree(f"derivation is not valid JSON: {exc}") from exc
    return derivation_from_json(obj)


def parse_subset(text: str) -> DecidableSubset:
    """``level:K``, ``min-length:K``, ``max-length:K``, ``finite:[0];[1,1]``,
    ``all``, ``empty`` or ``file:PATH`` (one sequence per line)."""
    text = text.strip()
    if text == "all":
        return DecidableSubset.everything()
    if text == "empty":
        return DecidableSubset.nothing()
    m = re.fullmatch(r"(level|min-length|max-length):(\d+)", text)
    if m:
        make = {"level": DecidableSubset.level, "min-length": DecidableSubset.min_length,
                "max-length": DecidableSubset.max_length_set}[m.group(1)]
        return make(int(m.group(2)))
    if text.startswith("finite:"):
        body = text[len("finite:"):].strip()
        items = [x for x in body.split(";") if x.strip()] if body else []
        return DecidableSubset.finite(parse_seq(x) for x in items)
    if text.startswith("file:"):
        path = text[len("file:"):]
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise ParseError(f"cannot read set file: {exc.strerror}", None, path) from exc
        members = []
        for lineno, raw in enumerate(lines, 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                try:
                    members.append(parse_seq(line))
                except ParseError as exc:
                    raise ParseError(str(exc), lineno, path) from exc
        return DecidableSubset.finite(members, f"file:{path}")
    raise ParseError(f"unknown set {text!r}")
