"""Finite positive topologies, concrete spaces and formal maps, decided exactly.

Everything here is brute force over ``Pow(S)`` for a small base ``S``.
Internally a subset of the base is an ``int`` bitmask (bit ``i`` is the
``i``-th atom), a cover is the table ``cover[U] = {a | a <| U}`` indexed by
mask, and a positivity is stored per atom as a bitset *over masks*:
``a >< U`` iff bit ``U`` of ``pos[a]`` is set.  The public functions accept
and return atoms and ``frozenset``s; masks stay inside.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import (
    AtomNotInBase,
    BaseTooLarge,
    ConcreteSpaceInvalid,
    EnumerationTooLarge,
    IncompatiblePositivity,
)

Atom = Hashable

# Exhaustive-search bounds.  Exceeding them is an error, never a truncation.
MAX_BASE = 5
MAX_RELATION_PAIRS = 12


# -- mask helpers ------------------------------------------------------------

def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def supermasks(mask: int, full: int) -> Iterator[int]:
    rest = full & ~mask
    for extra in submasks(rest):
        yield mask | extra


def _check_size(n: int, bound: int = MAX_BASE) -> None:
    if n > bound:
        raise BaseTooLarge(f"base of size {n} exceeds the exhaustive bound {bound}")


# -- topologies --------------------------------------------------------------

@dataclass(frozen=True)
class FiniteTopology:
    """A cover and a positivity on a finite base, stored as tables.

    The constructor does not check the positive-topology laws, because some
    structures of interest (the image ``Im[s]`` of an arbitrary relation)
    only satisfy part of them.  Use :meth:`from_axioms`, :func:`discrete` or
    :func:`representable` for checked construction and :meth:`laws` to audit.
    """

    base: tuple
    cover: tuple  # cover[U] = mask of atoms covered by U
    pos: tuple  # pos[a] = bitset over masks U with a >< U
    name: str = ""
    _index: Mapping = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.base)
        if len(set(self.base)) != n:
            raise ValueError(f"duplicate atoms in base {self.base!r}")
        if len(self.cover) != 1 << n or len(self.pos) != n:
            raise ValueError("table sizes do not match the base")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.base)})

    # -- construction ---------------------------------------------------

    @classmethod
    def from_axioms(cls, base: Sequence[Atom], axioms: Iterable[tuple[Atom, Iterable[Atom]]] = (),
                    pos: Iterable[tuple[Atom, Iterable[Atom]]] | None = None,
                    name: str = "") -> FiniteTopology:
        """Generate the cover from axioms ``(a, U)`` meaning ``a <| U``.

        ``pos`` lists the pairs ``(a, U)`` with ``a >< U``; when omitted the
        greatest positivity compatible with the cover is used.  A supplied
        positivity that is not a compatible positivity raises
        :class:`IncompatiblePositivity`.
        """
        base = tuple(base)
        n = len(base)
        _check_size(n)
        index = {a: i for i, a in enumerate(base)}

        def to_mask(atoms):
            m = 0
            for x in atoms:
                if x not in index:
                    raise AtomNotInBase(x)
                m |= 1 << index[x]
            return m

        ax = []
        for a, u in axioms:
            if a not in index:
                raise AtomNotInBase(a)
            ax.append((index[a], to_mask(u)))
        cover = close_cover(n, ax)
        if pos is None:
            return cls(base, cover, greatest_positivity_table(n, cover), name)
        table = [0] * n
        for a, u in pos:
            if a not in index:
                raise AtomNotInBase(a)
            table[index[a]] |= 1 << to_mask(u)
        topo = cls(base, cover, tuple(table), name)
        for law in ("coreflexivity", "cotransitivity", "compatibility"):
            w = topo.laws()[law]
            if w is not None:
                raise IncompatiblePositivity(law, w)
        return topo

    def with_positivity(self, pos: tuple, name: str | None = None) -> FiniteTopology:
        return FiniteTopology(self.base, self.cover, tuple(pos), self.name if name is None else name)

    # -- accessors ------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.base)

    @property
    def full(self) -> int:
        return (1 << len(self.base)) - 1

    def index(self, a: Atom) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise AtomNotInBase(a) from None

    def mask(self, atoms: Iterable[Atom]) -> int:
        m = 0
        for a in atoms:
            m |= 1 << self.index(a)
        return m

    def atoms(self, mask: int) -> frozenset:
        return frozenset(self.base[i] for i in bits(mask))

    def covers(self, a: int, u: int) -> bool:
        return bool(self.cover[u] >> a & 1)

    def positive(self, a: int, u: int) -> bool:
        return bool(self.pos[a] >> u & 1)

    def positive_set(self, u: int) -> int:
        """``{a | a >< U}`` as a mask."""
        m = 0
        for a in range(self.size):
            if self.pos[a] >> u & 1:
                m |= 1 << a
        return m

    def singles(self) -> list[int]:
        """``A({a})`` for each atom: the atoms below ``a``."""
        return [self.cover[1 << a] for a in range(self.size)]

    def down(self, u: int, v: int, singles: list[int] | None = None) -> int:
        """``U | V``: atoms covered by a single element of each side."""
        s = singles if singles is not None else self.singles()
        du = dv = 0
        for a in bits(u):
            du |= s[a]
        for b in bits(v):
            dv |= s[b]
        return du & dv

    def meets_pos(self, u: int, v: int) -> bool:
        """``U >< V``: some element of U is positive on V."""
        return any(self.pos[a] >> v & 1 for a in bits(u))

    def pos_pairs(self) -> frozenset:
        out = set()
        for a in range(self.size):
            for u in bits(self.pos[a]):
                out.add((self.base[a], self.atoms(u)))
        return frozenset(out)

    # -- laws -----------------------------------------------------------

    def laws(self) -> dict[str, object]:
        """Map each positive-topology law to ``None`` (holds) or a witness."""
        n, full = self.size, self.full
        cover, pos = self.cover, self.pos
        singles = self.singles()
        out: dict[str, object] = dict.fromkeys(
            ("reflexivity", "transitivity", "down-right",
             "coreflexivity", "cotransitivity", "compatibility"))

        for u in range(full + 1):
            if u & ~cover[u]:
                out["reflexivity"] = (self.base[next(bits(u & ~cover[u]))], self.atoms(u))
                break
        for v in range(full + 1):
            if out["transitivity"] is not None:
                break
            for u in submasks(cover[v]):
                extra = cover[u] & ~cover[v]
                if extra:
                    out["transitivity"] = (self.base[next(bits(extra))], self.atoms(u), self.atoms(v))
                    break
        for u in range(full + 1):
            if out["down-right"] is not None:
                break
            for v in range(full + 1):
                both = cover[u] & cover[v]
                missing = both & ~cover[self.down(u, v, singles)]
                if missing:
                    out["down-right"] = (self.base[next(bits(missing))], self.atoms(u), self.atoms(v))
                    break

        for a in range(n):
            for u in bits(pos[a]):
                if not u >> a & 1:
                    out["coreflexivity"] = (self.base[a], self.atoms(u))
                    break
            if out["coreflexivity"] is not None:
                break
        possets = [self.positive_set(u) for u in range(full + 1)]
        for u in range(full + 1):
            p = possets[u]
            if not p:
                continue
            bad = next((v for v in supermasks(p, full) if p & ~possets[v]), None)
            if bad is not None:
                a = next(bits(p & ~possets[bad]))
                out["cotransitivity"] = (self.base[a], self.atoms(u), self.atoms(bad))
                break
        for v in range(full + 1):
            p = possets[v]
            if out["compatibility"] is not None:
                break
            if not p:
                continue
            for u in range(full + 1):
                if cover[u] & p and not u & p:
                    a = next(bits(cover[u] & p))
                    out["compatibility"] = (self.base[a], self.atoms(u), self.atoms(v))
                    break
        return out

    def is_cover(self) -> bool:
        w = self.laws()
        return all(w[k] is None for k in ("reflexivity", "transitivity", "down-right"))

    def is_positive_topology(self) -> bool:
        return all(w is None for w in self.laws().values())


def close_cover(n: int, axioms: Iterable[tuple[int, int]]) -> tuple:
    """Least fixpoint of reflexivity, the axioms, transitivity and down-right.

    ``U | V`` is read off the singleton covers of the current iterate, so the
    two are computed jointly; the lattice is finite, so iteration stabilises.
    """
    full = (1 << n) - 1
    cover = list(range(full + 1))
    for a, u in axioms:
        cover[u] |= 1 << a
    changed = True
    while changed:
        changed = False
        for v in range(full + 1):
            acc = cover[v]
            for u in submasks(cover[v]):
                acc |= cover[u]
            if acc != cover[v]:
                cover[v] = acc
                changed = True
        singles = [cover[1 << a] for a in range(n)]
        reach = [0] * (full + 1)
        for u in range(full + 1):
            r = 0
            for a in bits(u):
                r |= singles[a]
            reach[u] = r
        for u in range(full + 1):
            for v in range(u, full + 1):
                both = cover[u] & cover[v]
                if not both:
                    continue
                w = reach[u] & reach[v]
                if both & ~cover[w]:
                    cover[w] |= both
                    changed = True
    return tuple(cover)


def greatest_positivity_table(n: int, cover: Sequence[int]) -> tuple:
    """``a >< U`` iff some ``V`` with ``a in V <= U`` is *splitting*:
    ``V`` meets ``W`` whenever ``V`` meets ``A(W)``, for every ``W``."""
    _check_size(n)
    full = (1 << n) - 1
    good = [v for v in range(1, full + 1)
            if all(not (v & cover[w]) or (v & w) for w in range(full + 1))]
    table = [0] * n
    for v in good:
        for u in supermasks(v, full):
            for a in bits(v):
                table[a] |= 1 << u
    return tuple(table)


def greatest_positivity(topo: FiniteTopology) -> FiniteTopology:
    """The same cover carrying its greatest compatible positivity."""
    return topo.with_positivity(greatest_positivity_table(topo.size, topo.cover))


def cover_decide(topo: FiniteTopology, a: Atom, u: Iterable[Atom]) -> bool:
    return topo.covers(topo.index(a), topo.mask(u))


def positivity_decide(topo: FiniteTopology, a: Atom, u: Iterable[Atom]) -> bool:
    return topo.positive(topo.index(a), topo.mask(u))


def discrete(base: Sequence[Atom], name: str = "") -> FiniteTopology:
    """Cover and positivity are both membership."""
    base = tuple(base)
    n = len(base)
    _check_size(n)
    cover = tuple(range(1 << n))
    pos = tuple(sum(1 << u for u in range(1 << n) if u >> a & 1) for a in range(n))
    return FiniteTopology(base, cover, pos, name or f"1{{{','.join(map(str, base))}}}")


def no_point_topology() -> FiniteTopology:
    """One atom, cover by membership, empty positivity: a topology without points."""
    return FiniteTopology(("*",), (0, 1), (0,), "no-point")


# -- ideal points ------------------------------------------------------------

def subset_is_inhabited(topo: FiniteTopology, m: int) -> bool:
    return m != 0


def subset_is_filtering(topo: FiniteTopology, m: int, singles=None) -> bool:
    s = singles if singles is not None else topo.singles()
    return all(m & s[a] & s[b] for a in bits(m) for b in bits(m))


def subset_splits(topo: FiniteTopology, m: int) -> bool:
    return all(not (topo.cover[u] & m) or (u & m) for u in range(topo.full + 1))


def subset_enters(topo: FiniteTopology, m: int) -> bool:
    return all(topo.pos[a] >> v & 1 for a in bits(m) for v in supermasks(m, topo.full))


def is_ideal_point(topo: FiniteTopology, m: int, singles=None) -> bool:
    return (m != 0 and subset_is_filtering(topo, m, singles)
            and subset_splits(topo, m) and subset_enters(topo, m))


def ideal_point_masks(topo: FiniteTopology) -> list[int]:
    _check_size(topo.size)
    singles = topo.singles()
    return [m for m in range(1, topo.full + 1) if is_ideal_point(topo, m, singles)]


def ideal_points(topo: FiniteTopology) -> list[frozenset]:
    return [topo.atoms(m) for m in ideal_point_masks(topo)]


def topology_of_points(base: Sequence[Atom], points: Sequence[int], name: str = "") -> FiniteTopology:
    """The representable structure of a family of neighbourhood masks.

    ``a <| U`` iff every point forcing ``a`` forces something in ``U``;
    ``a >< U`` iff some point forcing ``a`` has all its neighbourhoods in ``U``.
    """
    base = tuple(base)
    n = len(base)
    full = (1 << n) - 1
    cover = []
    for u in range(full + 1):
        escape = 0
        for p in points:
            if not p & u:
                escape |= p
        cover.append(full & ~escape)
    pos = [0] * n
    for p in points:
        for u in supermasks(p, full):
            for a in bits(p):
                pos[a] |= 1 << u
    return FiniteTopology(base, tuple(cover), tuple(pos), name)


def pointwise(topo: FiniteTopology) -> FiniteTopology:
    """The topology induced on the base by the space of ideal points."""
    return topology_of_points(topo.base, ideal_point_masks(topo), f"{topo.name}_Ip")


def is_spatial(topo: FiniteTopology) -> bool:
    ip = pointwise(topo)
    return all(not ip.cover[u] & ~topo.cover[u] for u in range(topo.full + 1))


def is_reducible(topo: FiniteTopology) -> bool:
    ip = pointwise(topo)
    return all(not topo.pos[a] & ~ip.pos[a] for a in range(topo.size))


def is_bispatial(topo: FiniteTopology) -> bool:
    return is_spatial(topo) and is_reducible(topo)


# -- concrete spaces ---------------------------------------------------------

@dataclass(frozen=True)
class FiniteConcreteSpace:
    """Points, a base, and a forcing relation ``x |- a``.

    Construction does not validate; :func:`representable` does.
    """

    points: tuple
    base: tuple
    forcing: frozenset
    name: str = ""

    def diamonds(self) -> list[int]:
        """``<>x`` as a base mask for each point."""
        idx = {a: i for i, a in enumerate(self.base)}
        out = [0] * len(self.points)
        pidx = {x: i for i, x in enumerate(self.points)}
        for x, a in self.forcing:
            if x not in pidx:
                raise ConcreteSpaceInvalid("forcing", f"unknown point {x!r}")
            if a not in idx:
                raise ConcreteSpaceInvalid("forcing", f"unknown atom {a!r}")
            out[pidx[x]] |= 1 << idx[a]
        return out

    def ext_masks(self) -> list[int]:
        """``ext a`` as a point mask for each atom."""
        d = self.diamonds()
        return [sum(1 << i for i, m in enumerate(d) if m >> a & 1) for a in range(len(self.base))]

    def violations(self) -> dict[str, object]:
        d = self.diamonds()
        ext = self.ext_masks()
        out: dict[str, object] = {"B1": None, "B2": None}
        for i, m in enumerate(d):
            if not m:
                out["B2"] = self.points[i]
                break
        n = len(self.base)
        for a, b in product(range(n), repeat=2):
            below = [c for c in range(n) if not ext[c] & ~ext[a] and not ext[c] & ~ext[b]]
            ext_down = 0
            for c in below:
                ext_down |= ext[c]
            if ext_down != ext[a] & ext[b]:
                out["B1"] = (self.base[a], self.base[b])
                break
        return out


def representable(space: FiniteConcreteSpace, check_bispatial: bool = True) -> FiniteTopology:
    """``a <| U`` iff ``ext a <= ext U``; ``a >< U`` iff ``ext a`` meets ``rest U``."""
    _check_size(len(space.base))
    for cond, w in space.violations().items():
        if w is not None:
            raise ConcreteSpaceInvalid(cond, w)
    topo = topology_of_points(space.base, space.diamonds(), space.name)
    if check_bispatial and not is_bispatial(topo):
        raise AssertionError(f"representable topology of {space.name!r} is not bi-spatial")
    return topo


# -- relations and formal maps -----------------------------------------------

@dataclass(frozen=True)
class FiniteRelation:
    source: tuple
    target: tuple
    pairs: frozenset

    def __post_init__(self):
        src, tgt = set(self.source), set(self.target)
        for a, b in self.pairs:
            if a not in src or b not in tgt:
                raise AtomNotInBase((a, b))

    @classmethod
    def from_rows(cls, source, target, rows: Sequence[int]) -> FiniteRelation:
        pairs = frozenset((source[i], target[j]) for i, r in enumerate(rows) for j in bits(r))
        return cls(tuple(source), tuple(target), pairs)

    @classmethod
    def identity(cls, base) -> FiniteRelation:
        base = tuple(base)
        return cls(base, base, frozenset((a, a) for a in base))

    def rows(self) -> list[int]:
        tidx = {b: j for j, b in enumerate(self.target)}
        sidx = {a: i for i, a in enumerate(self.source)}
        out = [0] * len(self.source)
        for a, b in self.pairs:
            out[sidx[a]] |= 1 << tidx[b]
        return out

    def image(self, atoms: Iterable) -> frozenset:
        atoms = set(atoms)
        return frozenset(b for a, b in self.pairs if a in atoms)

    def preimage(self, atoms: Iterable) -> frozenset:
        atoms = set(atoms)
        return frozenset(a for a, b in self.pairs if b in atoms)

    def compose(self, after: FiniteRelation) -> FiniteRelation:
        """``after o self``."""
        return FiniteRelation(self.source, after.target, frozenset(
            (a, c) for a, b in self.pairs for b2, c in after.pairs if b == b2))


class _Rel:
    """Mask view of a relation between two topologies."""

    __slots__ = ("rows", "ns", "nt")

    def __init__(self, rows, ns, nt):
        self.rows, self.ns, self.nt = list(rows), ns, nt

    def inv(self, v: int) -> int:
        m = 0
        for a, r in enumerate(self.rows):
            if r & v:
                m |= 1 << a
        return m

    def star(self, v: int) -> int:
        m = 0
        for a, r in enumerate(self.rows):
            if not r & ~v:
                m |= 1 << a
        return m

    def image(self, m: int) -> int:
        out = 0
        for a in bits(m):
            out |= self.rows[a]
        return out


@dataclass(frozen=True)
class FormalMapReport:
    fm1: bool
    fm2: bool
    fm3: bool
    fm4: bool
    counterexamples: dict

    @property
    def is_formal_map(self) -> bool:
        return self.fm1 and self.fm2 and self.fm3 and self.fm4

    def __bool__(self) -> bool:
        return self.is_formal_map


def _fm_masks(rel: _Rel, src: FiniteTopology, tgt: FiniteTopology, stop_early=False) -> dict:
    """Evaluate FM1-FM4; returns condition -> None or a mask-level witness."""
    out = {"fm1": None, "fm2": None, "fm3": None, "fm4": None}
    fs, ft = src.full, tgt.full
    inv = [rel.inv(v) for v in range(ft + 1)]
    missing = fs & ~src.cover[inv[ft]]
    if missing:
        out["fm1"] = (next(bits(missing)),)
        if stop_early:
            return out
    s_single, t_single = src.singles(), tgt.singles()
    nt = tgt.size
    for b in range(nt):
        for c in range(nt):
            lhs = src.down(inv[1 << b], inv[1 << c], s_single)
            bad = lhs & ~src.cover[inv[t_single[b] & t_single[c]]]
            if bad:
                out["fm2"] = (b, c, next(bits(bad)))
                break
        if out["fm2"] is not None:
            break
    if out["fm2"] is not None and stop_early:
        return out
    for v in range(ft + 1):
        covered = tgt.cover[v]
        if not covered:
            continue
        reach = src.cover[inv[v]]
        for b in bits(covered):
            bad = inv[1 << b] & ~reach
            if bad:
                out["fm3"] = (b, v, next(bits(bad)))
                break
        if out["fm3"] is not None:
            break
    if out["fm3"] is not None and stop_early:
        return out
    for v in range(ft + 1):
        star = rel.star(v)
        for b in range(nt):
            if src.meets_pos(inv[1 << b], star) and not tgt.pos[b] >> v & 1:
                out["fm4"] = (b, v)
                break
        if out["fm4"] is not None:
            break
    return out


def _fm_report(masks: dict, src: FiniteTopology, tgt: FiniteTopology) -> FormalMapReport:
    ce = {}
    if masks["fm1"] is not None:
        ce["fm1"] = src.base[masks["fm1"][0]]
    if masks["fm2"] is not None:
        b, c, a = masks["fm2"]
        ce["fm2"] = (tgt.base[b], tgt.base[c], src.base[a])
    if masks["fm3"] is not None:
        b, v, a = masks["fm3"]
        ce["fm3"] = (tgt.base[b], tgt.atoms(v), src.base[a])
    if masks["fm4"] is not None:
        b, v = masks["fm4"]
        ce["fm4"] = (tgt.base[b], tgt.atoms(v))
    return FormalMapReport(masks["fm1"] is None, masks["fm2"] is None,
                           masks["fm3"] is None, masks["fm4"] is None, ce)


def _rel_of(s: FiniteRelation, src: FiniteTopology, tgt: FiniteTopology) -> _Rel:
    if tuple(s.source) != src.base or tuple(s.target) != tgt.base:
        s = FiniteRelation(src.base, tgt.base, s.pairs)
    return _Rel(s.rows(), src.size, tgt.size)


def check_formal_map(s: FiniteRelation, src: FiniteTopology, tgt: FiniteTopology) -> FormalMapReport:
    """Evaluate FM1-FM4 exactly; witnesses are reported per failed condition.

    Witness shapes: FM1 an atom ``a`` of the source not covered by ``s^-T``;
    FM2 ``(b, c, a)`` with ``a`` in ``s^-b | s^-c`` but not below
    ``s^-(b | c)``; FM3 ``(b, V, a)`` with ``b <| V`` and ``a in s^-b`` not
    covered by ``s^-V``; FM4 ``(b, V)`` with ``s^-b >< s*V`` but not ``b >< V``.
    """
    return _fm_report(_fm_masks(_rel_of(s, src, tgt), src, tgt), src, tgt)


def is_formal_map_rows(rows, src: FiniteTopology, tgt: FiniteTopology) -> bool:
    m = _fm_masks(_Rel(rows, src.size, tgt.size), src, tgt, stop_early=True)
    return all(w is None for w in m.values())


def maps_equal(s: FiniteRelation, s2: FiniteRelation, src: FiniteTopology, tgt: FiniteTopology) -> bool:
    """Equality of formal maps: ``a <| s^-b`` iff ``a <| s2^-b`` for all a, b."""
    r1, r2 = _rel_of(s, src, tgt), _rel_of(s2, src, tgt)
    return all(src.cover[r1.inv(1 << b)] == src.cover[r2.inv(1 << b)] for b in range(tgt.size))


def maps_points_to_points(rows, src_points: Sequence[int], tgt: FiniteTopology,
                          tgt_points: frozenset | None = None) -> bool:
    rel = _Rel(rows, 0, 0)
    if tgt_points is None:
        tgt_points = frozenset(ideal_point_masks(tgt))
    return all(rel.image(alpha) in tgt_points for alpha in src_points)


def relation_rows(ns: int, nt: int) -> Iterator[tuple]:
    """Every relation between bases of the given sizes, empty relation first."""
    if ns * nt > MAX_RELATION_PAIRS:
        raise EnumerationTooLarge(f"{ns}x{nt} relation pairs exceed the bound {MAX_RELATION_PAIRS}")
    width = 1 << nt
    for code in range(1 << (ns * nt)):
        yield tuple((code >> (i * nt)) & (width - 1) for i in range(ns))


def all_relations(src: FiniteTopology, tgt: FiniteTopology) -> Iterator[FiniteRelation]:
    for rows in relation_rows(src.size, tgt.size):
        yield FiniteRelation.from_rows(src.base, tgt.base, rows)


# -- image factorization -----------------------------------------------------

@dataclass(frozen=True)
class ImageFactorization:
    image: FiniteTopology
    map_report: FormalMapReport  # s : Src -> Tgt
    flagged: bool  # s lacks FM2 or FM3, so Im[s] may lack down-right
    laws: dict
    left: FormalMapReport  # s : Src -> Im[s]
    right: FormalMapReport  # id : Im[s] -> Tgt


def image_topology(s: FiniteRelation, src: FiniteTopology, tgt: FiniteTopology) -> ImageFactorization:
    """``Im[s]``: ``b <|_s V`` iff ``s^-b <| s^-V``; ``b ><_s V`` iff ``s^-b >< s*V``."""
    rel = _rel_of(s, src, tgt)
    ft = tgt.full
    inv = [rel.inv(v) for v in range(ft + 1)]
    cover = []
    for v in range(ft + 1):
        reach = src.cover[inv[v]]
        cover.append(sum(1 << b for b in range(tgt.size) if not inv[1 << b] & ~reach))
    pos = [0] * tgt.size
    for v in range(ft + 1):
        star = rel.star(v)
        for b in range(tgt.size):
            if src.meets_pos(inv[1 << b], star):
                pos[b] |= 1 << v
    image = FiniteTopology(tgt.base, tuple(cover), tuple(pos), f"Im[{src.name}->{tgt.name}]")
    report = check_formal_map(s, src, tgt)
    ident = FiniteRelation.identity(tgt.base)
    return ImageFactorization(
        image=image,
        map_report=report,
        flagged=not (report.fm2 and report.fm3),
        laws=image.laws(),
        left=check_formal_map(FiniteRelation(src.base, tgt.base, s.pairs), src, image),
        right=check_formal_map(ident, image, tgt),
    )


# -- convergent relation pairs -----------------------------------------------

@dataclass(frozen=True)
class ConvergentPairReport:
    commutes: bool
    c1: bool
    c2: bool
    counterexamples: dict
    formal_map: FormalMapReport | None  # s between the representable topologies

    @property
    def convergent(self) -> bool:
        return self.commutes and self.c1 and self.c2


def check_convergent_pair(r: FiniteRelation, s: FiniteRelation,
                          x_space: FiniteConcreteSpace, y_space: FiniteConcreteSpace) -> ConvergentPairReport:
    """Check ``|-' o r = s o |-`` plus C1 and C2; if all hold, ``s`` must be a
    formal map between the representable topologies."""
    sx, sy = representable(x_space, check_bispatial=False), representable(y_space, check_bispatial=False)
    dx, dy = x_space.diamonds(), y_space.diamonds()
    rr = FiniteRelation(x_space.points, y_space.points, r.pairs).rows()
    srel = _rel_of(s, sx, sy)
    ce = {}
    commutes = True
    for i, x in enumerate(x_space.points):
        via_r = 0
        for j in bits(rr[i]):
            via_r |= dy[j]
        via_s = srel.image(dx[i])
        if via_r != via_s:
            commutes = False
            b = next(bits(via_r ^ via_s))
            ce["commutation"] = (x, y_space.base[b])
            break
    ext = x_space.ext_masks()

    def ext_of(mask):
        m = 0
        for a in bits(mask):
            m |= ext[a]
        return m

    c1 = True
    singles_x, singles_y = sx.singles(), sy.singles()
    for b, c in product(range(sy.size), repeat=2):
        lhs = ext_of(sx.down(srel.inv(1 << b), srel.inv(1 << c), singles_x))
        rhs = ext_of(srel.inv(singles_y[b] & singles_y[c]))
        if lhs != rhs:
            c1 = False
            ce["c1"] = (y_space.base[b], y_space.base[c])
            break
    c2 = ext_of(sx.full) == ext_of(srel.inv(sy.full))
    if not c2:
        ce["c2"] = x_space.points[next(bits(ext_of(sx.full) & ~ext_of(srel.inv(sy.full))))]
    fm = check_formal_map(s, sx, sy) if commutes and c1 and c2 else None
    return ConvergentPairReport(commutes, c1, c2, ce, fm)


def point_relation_of(s: FiniteRelation, x_space: FiniteConcreteSpace,
                      y_space: FiniteConcreteSpace) -> FiniteRelation:
    """``x r_s y`` iff ``<>y`` is contained in ``s <>x``."""
    dx, dy = x_space.diamonds(), y_space.diamonds()
    srel = _Rel(FiniteRelation(x_space.base, y_space.base, s.pairs).rows(), 0, 0)
    pairs = set()
    for i, x in enumerate(x_space.points):
        img = srel.image(dx[i])
        for j, y in enumerate(y_space.points):
            if not dy[j] & ~img:
                pairs.add((x, y))
    return FiniteRelation(x_space.points, y_space.points, frozenset(pairs))


# -- pointwise continuity and PoPC -------------------------------------------

@dataclass(frozen=True)
class EquicontReport:
    holds: bool
    relations_checked: int
    failures: tuple  # (relation, which statement failed)

    def __bool__(self) -> bool:
        return self.holds


def check_equicontop(src: FiniteTopology, tgt: FiniteTopology) -> EquicontReport:
    """For every relation ``s``: ``s_*`` maps ideal points to ideal points iff
    ``s`` is a formal map from the pointwise topology of ``src`` to ``tgt``.

    The four conditions are also matched one by one against the four
    properties of an ideal point (inhabited, filtering, splits, enters).
    """
    src_pts = ideal_point_masks(src)
    tgt_pts = frozenset(ideal_point_masks(tgt))
    src_ip = topology_of_points(src.base, src_pts)
    t_single = tgt.singles()
    failures = []
    count = 0
    for rows in relation_rows(src.size, tgt.size):
        count += 1
        rel = _Rel(rows, src.size, tgt.size)
        images = [rel.image(a) for a in src_pts]
        props = {
            "fm1": all(m != 0 for m in images),
            "fm2": all(subset_is_filtering(tgt, m, t_single) for m in images),
            "fm3": all(subset_splits(tgt, m) for m in images),
            "fm4": all(subset_enters(tgt, m) for m in images),
        }
        fm = _fm_masks(rel, src_ip, tgt)
        for k in ("fm1", "fm2", "fm3", "fm4"):
            if props[k] != (fm[k] is None):
                failures.append((FiniteRelation.from_rows(src.base, tgt.base, rows), k))
        lhs = all(m in tgt_pts for m in images)
        rhs = all(w is None for w in fm.values())
        if lhs != rhs:
            failures.append((FiniteRelation.from_rows(src.base, tgt.base, rows), "equivalence"))
    return EquicontReport(not failures, count, tuple(failures))


@dataclass(frozen=True)
class PopcResult:
    holds: bool
    counterexample: FiniteRelation | None = None
    report: FormalMapReport | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_popc(src: FiniteTopology, tgt: FiniteTopology) -> PopcResult:
    """Does every relation whose image maps points to points form a formal map?"""
    src_pts = ideal_point_masks(src)
    tgt_pts = frozenset(ideal_point_masks(tgt))
    for rows in relation_rows(src.size, tgt.size):
        if maps_points_to_points(rows, src_pts, tgt, tgt_pts) and not is_formal_map_rows(rows, src, tgt):
            rel = FiniteRelation.from_rows(src.base, tgt.base, rows)
            return PopcResult(False, rel, check_formal_map(rel, src, tgt))
    return PopcResult(True)
