"""Line-oriented text documents for finite topologies and concrete spaces.

A file holds one or more documents separated by lines of ``---``::

    topology: sierpinski
    base: a, b
    axioms:
      a -> {b}
    pos:
      b >< {b}
      b >< {a, b}

    ---
    space: two-points
    base: a, b
    points: x, y
    forcing:
      x |- a
      x |- b
      y |- b

``pos:`` is optional; when absent the greatest compatible positivity is
used, when present with no lines the positivity is empty.  ``#`` starts a
comment.  Errors carry the file name and line number.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .errors import AtomNotInBase, ConcreteSpaceInvalid, IncompatiblePositivity, ParseError
from .finite import FiniteConcreteSpace, FiniteTopology, representable

_ATOM = r"[A-Za-z0-9_*'.+-]+"
_SET_RE = re.compile(r"^\{\s*(.*?)\s*\}$")
_AXIOM_RE = re.compile(rf"^({_ATOM})\s*->\s*(\{{.*\}})$")
_POS_RE = re.compile(rf"^({_ATOM})\s*><\s*(\{{.*\}})$")
_FORCE_RE = re.compile(rf"^({_ATOM})\s*\|-\s*({_ATOM})$")
_KEY_RE = re.compile(r"^([a-z]+):\s*(.*)$")


@dataclass(frozen=True)
class Document:
    kind: str  # "topology" or "space"
    name: str
    topology: FiniteTopology
    space: Optional[FiniteConcreteSpace]
    source: str
    line: int


def _atoms(text: str, lineno: int, source: str) -> list[str]:
    items = [x.strip() for x in text.split(",")] if text.strip() else []
    for x in items:
        if not re.fullmatch(_ATOM, x):
            raise ParseError(f"bad atom {x!r}", lineno, source)
    if len(set(items)) != len(items):
        raise ParseError("duplicate atoms", lineno, source)
    return items


def _set(text: str, lineno: int, source: str) -> list[str]:
    m = _SET_RE.match(text.strip())
    if not m:
        raise ParseError(f"expected a set like {{a, b}}, got {text!r}", lineno, source)
    return _atoms(m.group(1), lineno, source)


def _split_documents(text: str):
    start, lines = 1, []
    for i, line in enumerate(text.splitlines(), 1):
        if line.strip() == "---":
            yield start, lines
            start, lines = i + 1, []
        else:
            lines.append((i, line))
    yield start, lines


def parse_documents(text: str, source: str = "<input>") -> list[Document]:
    docs = []
    for start, lines in _split_documents(text):
        body = [(i, raw.split("#", 1)[0].rstrip()) for i, raw in lines]
        body = [(i, l) for i, l in body if l.strip()]
        if body:
            docs.append(_parse_document(body, source))
    if not docs:
        raise ParseError("no documents found", None, source)
    return docs


def _parse_document(body, source: str) -> Document:
    kind = name = None
    head_line = body[0][0]
    base: Optional[list] = None
    points: Optional[list] = None
    axioms, pos, forcing = [], None, []
    section = None
    for lineno, line in body:
        indented = line[:1].isspace()
        text = line.strip()
        if not indented:
            m = _KEY_RE.match(text)
            if not m:
                raise ParseError(f"expected 'key: value', got {text!r}", lineno, source)
            key, value = m.group(1), m.group(2)
            section = None
            if key in ("topology", "space"):
                if kind is not None:
                    raise ParseError("a document names exactly one topology or space", lineno, source)
                kind, name = key, value.strip() or key
            elif key == "base":
                base = _atoms(value, lineno, source)
            elif key == "points":
                points = _atoms(value, lineno, source)
            elif key in ("axioms", "pos", "forcing"):
                if value.strip():
                    raise ParseError(f"'{key}:' entries go on the following indented lines", lineno, source)
                section = key
                if key == "pos":
                    pos = []
            else:
                raise ParseError(f"unknown key {key!r}", lineno, source)
            continue
        if section is None:
            raise ParseError("indented line outside a section", lineno, source)
        if section == "axioms":
            m = _AXIOM_RE.match(text)
            if not m:
                raise ParseError(f"expected 'a -> {{b, c}}', got {text!r}", lineno, source)
            axioms.append((m.group(1), _set(m.group(2), lineno, source), lineno))
        elif section == "pos":
            m = _POS_RE.match(text)
            if not m:
                raise ParseError(f"expected 'a >< {{b, c}}', got {text!r}", lineno, source)
            pos.append((m.group(1), _set(m.group(2), lineno, source), lineno))
        else:
            m = _FORCE_RE.match(text)
            if not m:
                raise ParseError(f"expected 'x |- a', got {text!r}", lineno, source)
            forcing.append((m.group(1), m.group(2), lineno))

    if kind is None:
        raise ParseError("missing 'topology:' or 'space:' header", head_line, source)
    if base is None:
        raise ParseError("missing 'base:'", head_line, source)
    known = set(base)
    for a, u, lineno in axioms + (pos or []):
        for x in [a, *u]:
            if x not in known:
                raise ParseError(f"atom {x!r} is not in the base", lineno, source)

    if kind == "space":
        if axioms or pos is not None:
            raise ParseError("a space is given by points and forcing only", head_line, source)
        if points is None:
            raise ParseError("missing 'points:'", head_line, source)
        for x, a, lineno in forcing:
            if x not in set(points):
                raise ParseError(f"unknown point {x!r}", lineno, source)
            if a not in known:
                raise ParseError(f"atom {a!r} is not in the base", lineno, source)
        space = FiniteConcreteSpace(tuple(points), tuple(base),
                                    frozenset((x, a) for x, a, _ in forcing), name)
        try:
            topo = representable(space, check_bispatial=False)
        except ConcreteSpaceInvalid as exc:
            raise ParseError(str(exc), head_line, source) from exc
        return Document(kind, name, topo, space, source, head_line)

    if points is not None or forcing:
        raise ParseError("a topology has no points or forcing", head_line, source)
    try:
        topo = FiniteTopology.from_axioms(
            base, [(a, u) for a, u, _ in axioms],
            None if pos is None else [(a, u) for a, u, _ in pos], name)
    except IncompatiblePositivity as exc:
        raise ParseError(str(exc), head_line, source) from exc
    except AtomNotInBase as exc:
        raise ParseError(f"atom {exc.args[0]!r} is not in the base", head_line, source) from exc
    return Document(kind, name, topo, None, source, head_line)


def load_documents(path: Union[str, Path]) -> list[Document]:
    """Read one file, or every ``*.txt`` file of a directory in name order."""
    path = Path(path)
    if path.is_dir():
        out = []
        for f in sorted(path.glob("*.txt")):
            out += load_documents(f)
        return out
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read: {exc.strerror}", None, str(path)) from exc
    return parse_documents(text, str(path))


def format_topology(topo: FiniteTopology) -> str:
    """A document listing every non-reflexive cover ``a -> U`` and the whole
    positivity; parsing it gives back ``topo`` when ``topo`` is a positive topology."""
    lines = [f"topology: {topo.name or 'T'}", "base: " + ", ".join(map(str, topo.base)), "axioms:"]
    for u in range(topo.full + 1):
        for a in range(topo.size):
            if topo.covers(a, u) and not u >> a & 1:
                lines.append(f"  {topo.base[a]} -> {{{', '.join(sorted(map(str, topo.atoms(u))))}}}")
    lines.append("pos:")
    for a, u in sorted(topo.pos_pairs(), key=lambda p: (str(p[0]), sorted(map(str, p[1])))):
        lines.append(f"  {a} >< {{{', '.join(sorted(map(str, u)))}}}")
    return "\n".join(lines) + "\n"
