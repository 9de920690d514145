"""Exhaustive families of small positive topologies and the statements
checked over them.

Each check returns a :class:`CheckResult`; a check passes when no
counterexample was found after visiting every instance of its family.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterator

from .finite import (
    FiniteConcreteSpace,
    FiniteRelation,
    FiniteTopology,
    _Rel,
    _fm_masks,
    bits,
    check_convergent_pair,
    check_equicontop,
    check_formal_map,
    close_cover,
    greatest_positivity_table,
    ideal_point_masks,
    image_topology,
    is_formal_map_rows,
    is_reducible,
    is_spatial,
    maps_equal,
    maps_points_to_points,
    no_point_topology,
    point_relation_of,
    pointwise,
    relation_rows,
    representable,
    supermasks,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    checked: int
    counterexample: object = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.counterexample is None


# -- families ----------------------------------------------------------------

def _base(n: int) -> tuple:
    return tuple("abc"[:n]) if n <= 3 else tuple(f"a{i}" for i in range(n))


def axiom_sets(n: int, max_axioms: int = 2) -> Iterator[tuple]:
    """Every set of at most ``max_axioms`` axioms ``(a, U)`` on ``n`` atoms (as masks)."""
    pool = [(a, u) for a in range(n) for u in range(1 << n)]
    for k in range(max_axioms + 1):
        yield from combinations(pool, k)


@lru_cache(maxsize=None)
def covers(n: int, max_axioms: int = 2) -> tuple:
    """Distinct covers generated by axiom sets, with one generating set each."""
    seen = {}
    for ax in axiom_sets(n, max_axioms):
        c = close_cover(n, ax)
        seen.setdefault(c, ax)
    return tuple(seen.items())


def compatible(n: int, cover, pos) -> bool:
    full = (1 << n) - 1
    for v in range(full + 1):
        p = sum(1 << a for a in range(n) if pos[a] >> v & 1)
        if p and any(cover[u] & p and not u & p for u in range(full + 1)):
            return False
    return True


@lru_cache(maxsize=None)
def positivities(n: int) -> tuple:
    """Every coreflexive, cotransitive relation on ``n`` atoms."""
    full = (1 << n) - 1
    choices = [[u for u in range(full + 1) if u >> a & 1] for a in range(n)]
    out = []
    for rows in product(*(range(1 << len(c)) for c in choices)):
        pos = tuple(sum(1 << choices[a][i] for i in bits(rows[a])) for a in range(n))
        ok = True
        for u in range(full + 1):
            p = sum(1 << a for a in range(n) if pos[a] >> u & 1)
            if not p:
                continue
            for v in supermasks(p, full):
                if any(not pos[a] >> v & 1 for a in bits(p)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(pos)
    return tuple(out)


def topologies(n: int, max_axioms: int = 2, all_positivities: bool = False) -> list[FiniteTopology]:
    """Positive topologies on ``n`` atoms: each generated cover with its greatest
    positivity, or with every compatible positivity when requested."""
    base = _base(n)
    out = []
    for i, (cover, _) in enumerate(covers(n, max_axioms)):
        if all_positivities:
            poss = [p for p in positivities(n) if compatible(n, cover, p)]
        else:
            poss = [greatest_positivity_table(n, cover)]
        for j, pos in enumerate(poss):
            out.append(FiniteTopology(base, cover, pos, f"T{n}.{i}.{j}"))
    return out


def concrete_spaces(n_points: int, n_atoms: int) -> Iterator[FiniteConcreteSpace]:
    """Every forcing relation satisfying B1 and B2 on the given sizes."""
    points = tuple(f"x{i}" for i in range(n_points))
    base = _base(n_atoms)
    for rows in relation_rows(n_points, n_atoms):
        if not all(rows):
            continue
        space = FiniteConcreteSpace(points, base, frozenset(
            (points[i], base[j]) for i, r in enumerate(rows) for j in bits(r)))
        if space.violations()["B1"] is None:
            yield space


# -- checks ------------------------------------------------------------------

def _timed(fn: Callable[[], CheckResult]) -> CheckResult:
    t = time.perf_counter()
    r = fn()
    return CheckResult(r.name, r.checked, r.counterexample, time.perf_counter() - t)


def check_cover_laws(max_size: int = 3) -> CheckResult:
    count = 0
    for n in range(1, max_size + 1):
        for t in topologies(n):
            count += 1
            bad = {k: w for k, w in t.laws().items() if w is not None}
            if bad:
                return CheckResult("cover-laws", count, (t.name, bad))
            full = t.full
            for u in range(full + 1):
                for v in supermasks(u, full):
                    if t.cover[u] & ~t.cover[v]:
                        return CheckResult("cover-laws", count, (t.name, "monotone", u, v))
    return CheckResult("cover-laws", count)


def check_greatest_positivity(max_size: int = 3) -> CheckResult:
    """The greatest positivity is compatible and contains every compatible positivity."""
    count = 0
    for n in range(1, max_size + 1):
        for cover, ax in covers(n):
            g = greatest_positivity_table(n, cover)
            t = FiniteTopology(_base(n), cover, g)
            if not t.is_positive_topology():
                return CheckResult("greatest-positivity", count, ("not compatible", ax))
            for p in positivities(n):
                if compatible(n, cover, p):
                    count += 1
                    if any(p[a] & ~g[a] for a in range(n)):
                        return CheckResult("greatest-positivity", count, (ax, p))
    return CheckResult("greatest-positivity", count)


def check_compatibility_restriction(max_size: int = 3) -> CheckResult:
    """A positivity compatible with a cover stays compatible with every smaller
    cover.  Pairs are taken over all generated covers that are actually nested:
    a sub-axiom set need not generate a smaller cover, since down-right reads
    off the cover being generated."""
    count = 0
    for n in range(1, max_size + 1):
        poss = positivities(n)
        cs = [c for c, _ in covers(n)]
        for big in cs:
            good = [p for p in poss if compatible(n, big, p)]
            for small in cs:
                if any(small[u] & ~big[u] for u in range(1 << n)):
                    continue
                for p in good:
                    count += 1
                    if not compatible(n, small, p):
                        return CheckResult("compatibility-restriction", count, (big, small, p))
    return CheckResult("compatibility-restriction", count)


def _small_topologies() -> list[FiniteTopology]:
    """All 1- and 2-atom topologies with every compatible positivity, plus the no-point example."""
    out = topologies(1, all_positivities=True) + topologies(2, max_axioms=3, all_positivities=True)
    if not any(t.pos == (0,) and t.cover == (0, 1) for t in out):
        out.append(no_point_topology())
    return out


def check_pointwise_equivalence() -> CheckResult:
    """Points mapped to points iff formal map out of the pointwise topology,
    including the four condition-by-condition equivalences."""
    family = _small_topologies()
    count = 0
    for src in family:
        for tgt in family:
            rep = check_equicontop(src, tgt)
            count += rep.relations_checked
            if not rep.holds:
                return CheckResult("pointwise-formal-map-equivalence", count,
                                   (src.name, tgt.name, rep.failures[0]))
    return CheckResult("pointwise-formal-map-equivalence", count)


def check_formal_maps_preserve_points() -> CheckResult:
    family = _small_topologies()
    count = 0
    for src in family:
        pts = ideal_point_masks(src)
        for tgt in family:
            tpts = frozenset(ideal_point_masks(tgt))
            for rows in relation_rows(src.size, tgt.size):
                if is_formal_map_rows(rows, src, tgt):
                    count += 1
                    if not maps_points_to_points(rows, pts, tgt, tpts):
                        return CheckResult("formal-maps-preserve-points", count, (src.name, tgt.name, rows))
    return CheckResult("formal-maps-preserve-points", count)


def check_image_factorization() -> CheckResult:
    """Im[s] keeps every law but down-right; with FM2 and FM3 it is a positive
    topology, s factors through it exactly when FM1 holds, the identity out of
    it is a formal map exactly when FM4 holds, and a formal map equals the
    composite of its two factors."""
    name = "image-factorization"
    family = _small_topologies()
    count = 0
    for src in family:
        for tgt in family:
            for rows in relation_rows(src.size, tgt.size):
                count += 1
                s = FiniteRelation.from_rows(src.base, tgt.base, rows)
                f = image_topology(s, src, tgt)
                bad = {k: w for k, w in f.laws.items() if w is not None and k != "down-right"}
                if bad:
                    return CheckResult(name, count, ("laws", src.name, tgt.name, rows, bad))
                rep = f.map_report
                if rep.fm2 and rep.fm3:
                    if f.laws["down-right"] is not None:
                        return CheckResult(name, count, ("down-right", src.name, tgt.name, rows))
                    if f.left.is_formal_map != rep.fm1:
                        return CheckResult(name, count, ("left factor", src.name, tgt.name, rows))
                    if f.right.is_formal_map != rep.fm4:
                        return CheckResult(name, count, ("right factor", src.name, tgt.name, rows))
                if rep.is_formal_map:
                    composite = s.compose(FiniteRelation.identity(tgt.base))
                    if not maps_equal(composite, s, src, tgt):
                        return CheckResult(name, count, ("composite", src.name, tgt.name, rows))
    return CheckResult(name, count)


def check_image_popc() -> CheckResult:
    """A relation out of Im[s] is a formal map iff its composite with s is one,
    and continuity out of the source transfers to the image."""
    name = "image-popc"
    family = _small_topologies()
    popc = {}
    count = 0
    for src in family:
        for tgt in family:
            for rows in relation_rows(src.size, tgt.size):
                if not is_formal_map_rows(rows, src, tgt):
                    continue
                s = FiniteRelation.from_rows(src.base, tgt.base, rows)
                im = image_topology(s, src, tgt).image
                for other in family:
                    count += 1
                    for rows2 in relation_rows(tgt.size, other.size):
                        comp = [0] * src.size
                        for a, r in enumerate(rows):
                            for b in bits(r):
                                comp[a] |= rows2[b]
                        if is_formal_map_rows(rows2, im, other) != is_formal_map_rows(comp, src, other):
                            return CheckResult(name, count, ("composite", src.name, tgt.name, rows, rows2))
                    key = (src.name, other.name)
                    if key not in popc:
                        popc[key] = _popc(src, other)
                    if popc[key] and not _popc(im, other):
                        return CheckResult(name, count, ("transfer", src.name, tgt.name, rows, other.name))
    return CheckResult(name, count)


def _popc(src: FiniteTopology, tgt: FiniteTopology) -> bool:
    pts = ideal_point_masks(src)
    tpts = frozenset(ideal_point_masks(tgt))
    return all(is_formal_map_rows(rows, src, tgt)
               for rows in relation_rows(src.size, tgt.size)
               if maps_points_to_points(rows, pts, tgt, tpts))


def check_greatest_target_fm4() -> CheckResult:
    """FM1-FM3 into a topology with its greatest positivity imply FM4."""
    family = _small_topologies()
    count = 0
    for src in family:
        for tgt in family:
            if tgt.pos != greatest_positivity_table(tgt.size, tgt.cover):
                continue
            for rows in relation_rows(src.size, tgt.size):
                fm = _fm_masks(_Rel(rows, src.size, tgt.size), src, tgt)
                if fm["fm1"] is None and fm["fm2"] is None and fm["fm3"] is None:
                    count += 1
                    if fm["fm4"] is not None:
                        return CheckResult("greatest-target-fm4", count, (src.name, tgt.name, rows))
    return CheckResult("greatest-target-fm4", count)


def check_popc_sufficient_conditions() -> CheckResult:
    """Continuity holds out of a bi-spatial source, and out of a spatial source
    into a target carrying its greatest positivity."""
    family = _small_topologies()
    count = 0
    for src in family:
        spatial = is_spatial(src)
        bispatial = spatial and is_reducible(src)
        for tgt in family:
            greatest = tgt.pos == greatest_positivity_table(tgt.size, tgt.cover)
            if bispatial or (spatial and greatest):
                count += 1
                if not _popc(src, tgt):
                    return CheckResult("popc-sufficient-conditions", count, (src.name, tgt.name))
    return CheckResult("popc-sufficient-conditions", count)


def check_representable_bispatial(max_points: int = 3, max_atoms: int = 3) -> CheckResult:
    """Representable topologies are bi-spatial, every neighbourhood filter is an
    ideal point, and rebuilding from the ideal points gives the same structure."""
    count = 0
    for n_pts in range(1, max_points + 1):
        for n_at in range(1, max_atoms + 1):
            for space in concrete_spaces(n_pts, n_at):
                count += 1
                t = representable(space, check_bispatial=False)
                if not (is_spatial(t) and is_reducible(t)):
                    return CheckResult("representable-bispatial", count, sorted(space.forcing))
                pts = set(ideal_point_masks(t))
                if any(d not in pts for d in space.diamonds()):
                    return CheckResult("representable-bispatial", count, ("diamond", sorted(space.forcing)))
                ip = pointwise(t)
                if ip.cover != t.cover or ip.pos != t.pos:
                    return CheckResult("representable-bispatial", count, ("idempotence", sorted(space.forcing)))
    return CheckResult("representable-bispatial", count)


def check_convergent_pairs(n_points: int = 2, n_atoms: int = 2) -> CheckResult:
    """Convergent relation pairs give formal maps, and every formal map between
    representable topologies is the second half of the pair built from it."""
    name = "convergent-pairs"
    spaces = list(concrete_spaces(n_points, n_atoms))
    count = 0
    for xs in spaces:
        tx = representable(xs, check_bispatial=False)
        for ys in spaces:
            ty = representable(ys, check_bispatial=False)
            for srows in relation_rows(n_atoms, n_atoms):
                s = FiniteRelation.from_rows(xs.base, ys.base, srows)
                is_fm = bool(check_formal_map(s, tx, ty))
                for rrows in relation_rows(n_points, n_points):
                    count += 1
                    r = FiniteRelation.from_rows(xs.points, ys.points, rrows)
                    rep = check_convergent_pair(r, s, xs, ys)
                    if rep.convergent and not rep.formal_map:
                        return CheckResult(name, count, ("not a formal map", sorted(xs.forcing),
                                                         sorted(ys.forcing), srows, rrows))
                if is_fm:
                    r = point_relation_of(s, xs, ys)
                    if not check_convergent_pair(r, s, xs, ys).convergent:
                        return CheckResult(name, count, ("reconstruction", sorted(xs.forcing),
                                                         sorted(ys.forcing), srows))
    return CheckResult(name, count)


def check_no_point_example() -> CheckResult:
    """The one-atom topology without points breaks continuity via the empty relation."""
    src = no_point_topology()
    tgt = FiniteTopology(("0",), (0, 1), (0b10,), "1{0}")
    empty = FiniteRelation(src.base, tgt.base, frozenset())
    rep = check_formal_map(empty, src, tgt)
    ok = (ideal_point_masks(src) == [] and not rep.fm1 and rep.counterexamples.get("fm1") == "*"
          and not _popc(src, tgt))
    return CheckResult("no-point-example", 1, None if ok else rep)


ALL_CHECKS: dict[str, Callable[[], CheckResult]] = {
    "cover-laws": check_cover_laws,
    "greatest-positivity": check_greatest_positivity,
    "compatibility-restriction": check_compatibility_restriction,
    "pointwise-formal-map-equivalence": check_pointwise_equivalence,
    "formal-maps-preserve-points": check_formal_maps_preserve_points,
    "image-factorization": check_image_factorization,
    "image-popc": check_image_popc,
    "greatest-target-fm4": check_greatest_target_fm4,
    "popc-sufficient-conditions": check_popc_sufficient_conditions,
    "representable-bispatial": check_representable_bispatial,
    "convergent-pairs": check_convergent_pairs,
    "no-point-example": check_no_point_example,
}


def run_suite(names=None) -> list[CheckResult]:
    names = list(ALL_CHECKS) if names is None else names
    return [_timed(ALL_CHECKS[n]) for n in names]
