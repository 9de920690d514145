"""Command-line interface.

Exit codes: 0 success or true, 1 false or refuted (a witness is printed),
2 resource exhaustion, 3 malformed input.  ``--json`` prints one JSON
object ``{"command", "exit", "result"}`` instead of text.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .baire import (
    check_binary,
    check_derivation,
    loads_derivation,
    parse_stream,
    parse_subset,
    random_stream,
    split_cover,
)
from .core import format_rational, format_seq, j0, j1, parse_seq
from .errors import (
    AtomNotInBase,
    IncompatiblePositivity,
    MalformedInput,
    NotCoverable,
    NotSingleValued,
    ParseError,
    PointfreeError,
    ResourceExhausted,
)
from .finite import (
    FiniteTopology,
    check_popc,
    greatest_positivity,
    ideal_points,
    is_bispatial,
    is_reducible,
    is_spatial,
)
from .finite_suite import ALL_CHECKS, run_suite
from .formats import load_documents
from .maps import modulus, parse_relation, parse_sigma_presentation, sigma_to_decidable_bar
from .reals import (
    certificate_to_json,
    certify,
    finite_cover_decide,
    heine_borel,
    parse_cover,
    parse_enumerated_cover,
    parse_target,
    render_certificate,
    uncovered_point,
    validate_certificate,
)
from .spreads import Spread, fan_uniform_depth, parse_spread, retract_seq, retract_stream

OK, FALSE, RESOURCE, MALFORMED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Outcome:
    """What a command produced: text lines, a JSON payload and an exit code."""

    def __init__(self, code: int, lines: Sequence[str], result):
        self.code = code
        self.lines = list(lines)
        self.result = result


# -- helpers -----------------------------------------------------------------

def _stream(text: str, seed: int):
    return random_stream(seed) if text.strip() == "random" else parse_stream(text)


def _spread(text: str, seed: int) -> Spread:
    return Spread.pseudorandom(seed) if text.strip() == "pseudorandom" else parse_spread(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read: {exc.strerror}", None, path) from exc


def _atoms(xs) -> str:
    return "{" + ",".join(sorted(map(str, xs))) + "}"


def _iv(t) -> list:
    return [format_rational(t.p), format_rational(t.q)]


# -- finite ------------------------------------------------------------------

ONE_POINT = FiniteTopology(("0",), (0, 1), (0b10,), "1{0}")


def _finite_verify(args) -> Outcome:
    docs = []
    for path in args.paths:
        docs += load_documents(path)
    lines, out, failed = [], [], False
    for doc in docs:
        topo = doc.topology
        rec = {"name": doc.name, "kind": doc.kind, "source": f"{doc.source}:{doc.line}"}
        lines.append(f"{doc.name} ({rec['source']})")
        laws = topo.laws()
        bad = {k: v for k, v in laws.items() if v is not None}
        rec["laws"] = {k: (None if v is None else repr(v)) for k, v in laws.items()}
        lines.append(f"  laws                 {'FAIL ' + repr(bad) if bad else 'PASS'}")
        failed |= bool(bad)
        greatest = greatest_positivity(topo).pos == topo.pos
        pts = ideal_points(topo)
        rec["greatest_positivity"] = greatest
        rec["ideal_points"] = [sorted(map(str, p)) for p in pts]
        rec["spatial"], rec["reducible"] = is_spatial(topo), is_reducible(topo)
        lines.append(f"  greatest-positivity  {'yes' if greatest else 'no'}")
        lines.append(f"  ideal-points         {' '.join(_atoms(p) for p in pts) or 'none'}")
        lines.append(f"  spatial              {'yes' if rec['spatial'] else 'no'}")
        lines.append(f"  reducible            {'yes' if rec['reducible'] else 'no'}")
        if doc.kind == "space":
            ok = is_bispatial(topo)
            rec["bispatial"] = ok
            lines.append(f"  bi-spatial           {'PASS' if ok else 'FAIL'}")
            failed |= not ok
        popc = check_popc(topo, ONE_POINT)
        if popc.holds:
            rec["popc"] = {"target": ONE_POINT.name, "holds": True}
            lines.append(f"  popc -> {ONE_POINT.name:<12} PASS")
        else:
            rel = popc.counterexample
            fails = {k: v for k, v in popc.report.counterexamples.items() if v is not None}
            cond = min(fails)
            pairs = sorted((str(a), str(b)) for a, b in rel.pairs)
            rec["popc"] = {"target": ONE_POINT.name, "holds": False,
                           "relation": [list(p) for p in pairs],
                           "violated": cond, "witness": repr(fails[cond])}
            lines.append(f"  popc -> {ONE_POINT.name:<12} FAIL relation {_atoms(f'{a}>{b}' for a, b in pairs)} "
                         f"maps points to points but violates {cond.upper()} at {fails[cond]!r}")
            failed = True
        out.append(rec)
    suite = []
    if not args.no_suite:
        lines.append("exhaustive checks")
        for r in run_suite(args.check or None):
            suite.append({"name": r.name, "passed": r.passed, "checked": r.checked,
                          "counterexample": None if r.passed else repr(r.counterexample)})
            status = "PASS" if r.passed else f"FAIL {r.counterexample!r}"
            lines.append(f"  {r.name:<34} {status} ({r.checked} checked)")
            failed |= not r.passed
    return Outcome(FALSE if failed else OK, lines, {"documents": out, "suite": suite})


# -- baire -------------------------------------------------------------------

def _baire_split(args) -> Outcome:
    d = loads_derivation(_read(args.derivation))
    u = parse_subset(args.set)
    alpha = _stream(args.stream, args.seed)
    if not alpha.passes_through(d.conclusion):
        raise ParseError(f"stream {alpha.name} does not pass through {format_seq(d.conclusion)}")
    a = split_cover(alpha, d, u, args.fuel)
    return Outcome(OK, [format_seq(a)], {"prefix": list(a)})


def _baire_check(args) -> Outcome:
    d = loads_derivation(_read(args.derivation))
    u = parse_subset(args.set)
    if args.binary_depth is not None:
        v = check_binary(d, u, args.binary_depth, allow_zeta=not args.no_zeta)
    else:
        v = check_derivation(d, u, [parse_seq(p) for p in args.probe],
                             allow_zeta=not args.no_zeta, fuel=args.fuel)
    res = {"ok": v.ok, "exhaustive": v.exhaustive, "nodes": v.nodes}
    if not v.ok:
        res["violation"] = {"at": list(v.violation.conclusion), "path": list(v.violation.path),
                            "reason": v.violation.reason}
    return Outcome(OK if v.ok else FALSE, [v.describe()], res)


# -- maps --------------------------------------------------------------------

def _maps_eval(args) -> Outcome:
    s = parse_relation(args.relation)
    alpha = _stream(args.stream, args.seed)
    a, n = modulus(s, alpha, args.fuel)
    lines = [f"modulus {format_seq(a)}", f"value {n}"] if args.modulus else [str(n)]
    return Outcome(OK, lines, {"value": n, "modulus": list(a)})


def _maps_sigma2dec(args) -> Outcome:
    p = parse_sigma_presentation(args.d)
    v = sigma_to_decidable_bar(p)
    a = parse_seq(args.probe)
    c = len(a)
    hit = a in v
    line = (f"V({format_seq(a)}) = {'true' if hit else 'false'}: "
            f"D({format_seq(a[:j0(c)])}, {j1(c)})")
    return Outcome(OK if hit else FALSE, [line],
                   {"member": hit, "segment": list(a[:j0(c)]), "n": j1(c)})


# -- spreads -----------------------------------------------------------------

def _spread_retract(args) -> Outcome:
    u = _spread(args.spread, args.seed)
    if (args.input is None) == (args.stream is None):
        raise UsageError("spread retract: give exactly one of --input or --stream")
    if args.input is not None:
        b = retract_seq(u, parse_seq(args.input), args.fuel)
    else:
        if args.levels is None:
            raise UsageError("spread retract: --stream needs --levels")
        b = retract_stream(u, _stream(args.stream, args.seed), args.fuel).prefix(args.levels)
    return Outcome(OK, [format_seq(b)], {"retraction": list(b)})


def _fan_depth(args) -> Outcome:
    k = fan_uniform_depth(parse_subset(args.set), args.max)
    return Outcome(OK, [str(k)], {"depth": k})


# -- reals -------------------------------------------------------------------

def _cover_problem(args):
    t = parse_target(args.target)
    cover = parse_cover(_read(args.cover), args.cover)
    return t, cover


def _refuted(args, t, cover) -> Outcome:
    w = uncovered_point(args.mode, t, cover)
    return Outcome(FALSE, [f"not covered: witness {format_rational(w)}"],
                   {"covered": False, "witness": format_rational(w)})


def _reals_decide(args) -> Outcome:
    t, cover = _cover_problem(args)
    if not finite_cover_decide(args.mode, t, cover):
        return _refuted(args, t, cover)
    return Outcome(OK, ["covered"], {"covered": True})


def _reals_certify(args) -> Outcome:
    t, cover = _cover_problem(args)
    try:
        cert = certify(args.mode, t, cover)
    except NotCoverable:
        return _refuted(args, t, cover)
    problem = validate_certificate(args.mode, cert, cover, t)
    if problem is not None:  # pragma: no cover - would be a certifier bug
        raise AssertionError(f"certificate rejected: {problem}")
    return Outcome(OK, render_certificate(cert).splitlines(),
                   {"covered": True, "certificate": certificate_to_json(cert)})


def _reals_heine_borel(args) -> Outcome:
    t = parse_target(args.target)
    sub = heine_borel(args.mode, t, parse_enumerated_cover(args.enum), args.fuel)
    return Outcome(OK, [f"{format_rational(iv.p)},{format_rational(iv.q)}" for iv in sub],
                   {"subcover": [_iv(iv) for iv in sub]})


# -- the parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pointfree", description="Finite and formal pointfree topology workbench.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for 'random' streams and the 'pseudorandom' spread")
    common.add_argument("--fuel", type=int, default=10_000, help="search budget")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    fin = groups.add_parser("finite", help="finite positive topologies").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    v = fin.add_parser("verify", parents=[common], help="check documents and run the exhaustive suite")
    v.add_argument("paths", nargs="+", help="topology files or directories of *.txt files")
    v.add_argument("--no-suite", action="store_true", help="skip the exhaustive checks")
    v.add_argument("--check", action="append", choices=sorted(ALL_CHECKS), default=[],
                   help="run only the named exhaustive check (repeatable)")
    v.set_defaults(run=_finite_verify)

    ba = groups.add_parser("baire", help="formal Baire space").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    s = ba.add_parser("split", parents=[common], help="follow a stream through a derivation")
    s.add_argument("--derivation", required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--stream", required=True)
    s.set_defaults(run=_baire_split)
    c = ba.add_parser("check", parents=[common], help="check a derivation")
    c.add_argument("--derivation", required=True)
    c.add_argument("--set", required=True)
    c.add_argument("--probe", action="append", default=[], help="probe path (repeatable)")
    c.add_argument("--binary-depth", type=int, help="check every binary path exhaustively")
    c.add_argument("--no-zeta", action="store_true", help="reject zeta steps")
    c.set_defaults(run=_baire_check)

    mp = groups.add_parser("maps", help="relations on choice sequences").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    e = mp.add_parser("eval", parents=[common], help="evaluate a relation on a stream")
    e.add_argument("--relation", required=True)
    e.add_argument("--stream", required=True)
    e.add_argument("--modulus", action="store_true", help="also print the deciding prefix")
    e.set_defaults(run=_maps_eval)
    sd = mp.add_parser("sigma2dec", parents=[common], help="query the decidable bar of a presentation")
    sd.add_argument("--d", required=True)
    sd.add_argument("--probe", required=True)
    sd.set_defaults(run=_maps_sigma2dec)

    sp = groups.add_parser("spread", help="spreads").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    r = sp.add_parser("retract", parents=[common], help="retract onto a spread")
    r.add_argument("--spread", required=True)
    r.add_argument("--input")
    r.add_argument("--stream")
    r.add_argument("--levels", type=int)
    r.set_defaults(run=_spread_retract)

    fan = groups.add_parser("fan", help="the binary fan").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    d = fan.add_parser("depth", parents=[common], help="uniform depth of a bar")
    d.add_argument("--set", required=True)
    d.add_argument("--max", type=int, required=True)
    d.set_defaults(run=_fan_depth)

    re_ = groups.add_parser("reals", help="formal reals and the unit interval").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    for name, fn, helptext in (("decide", _reals_decide, "decide a finite cover"),
                               ("certify", _reals_certify, "print a cover derivation")):
        q = re_.add_parser(name, parents=[common], help=helptext)
        q.add_argument("--mode", choices=("r", "i01"), required=True)
        q.add_argument("--target", required=True)
        q.add_argument("--cover", required=True)
        q.set_defaults(run=fn)
    hb = re_.add_parser("heine-borel", parents=[common], help="extract a finite subcover")
    hb.add_argument("--mode", choices=("r", "i01"), required=True)
    hb.add_argument("--target", required=True)
    hb.add_argument("--enum", required=True)
    hb.set_defaults(run=_reals_heine_borel, fuel=1000)
    return p


def _command_name(argv: Sequence[str]) -> str:
    words = [a for a in argv if not a.startswith("-")][:2]
    return " ".join(words)


_VALUE_OPTIONS = ("--target", "--input", "--probe")


def _glue_values(argv: list) -> list:
    """Attach values such as ``-1/2..1/1`` to their option so that argparse
    does not read them as options."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1][:1] == "-":
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    out = out or sys.stdout
    err = err or sys.stderr
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        outcome = args.run(args)
    except UsageError as exc:
        outcome = Outcome(MALFORMED, [], None)
        message, kind = str(exc), "usage"
    except ResourceExhausted as exc:
        outcome = Outcome(RESOURCE, [], None)
        message, kind = str(exc), type(exc).__name__
    except NotSingleValued as exc:
        outcome = Outcome(FALSE, [], None)
        message, kind = str(exc), "NotSingleValued"
    except (MalformedInput, IncompatiblePositivity, AtomNotInBase) as exc:
        outcome = Outcome(MALFORMED, [], None)
        message, kind = str(exc), type(exc).__name__
    except PointfreeError as exc:
        outcome = Outcome(FALSE, [], None)
        message, kind = str(exc), type(exc).__name__
    else:
        message = kind = None
    if as_json:
        payload = {"command": _command_name(argv), "exit": outcome.code, "result": outcome.result}
        if message is not None:
            payload["error"] = {"kind": kind, "message": message}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for line in outcome.lines:
            out.write(line + "\n")
        if message is not None:
            err.write(f"error ({kind}): {message}\n")
    return outcome.code


def main() -> None:
    sys.exit(run())
