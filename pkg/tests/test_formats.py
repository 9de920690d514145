import pytest

from pointfree.errors import ParseError
from pointfree.finite import cover_decide, positivity_decide
from pointfree.formats import format_topology, load_documents, parse_documents


def test_parse_topology_and_space():
    docs = parse_documents(
        """
topology: t   # comment
base: a, b
axioms:
  a -> {b}
pos:
  b >< {b}
  b >< {a, b}
---
space: s
base: a, b
points: x, y
forcing:
  x |- a
  x |- b
  y |- b
""", "doc")
    t, s = docs
    assert (t.kind, t.name, t.line) == ("topology", "t", 2)
    assert cover_decide(t.topology, "a", ["b"])
    assert positivity_decide(t.topology, "b", ["b"])
    assert not positivity_decide(t.topology, "a", ["a", "b"])
    assert s.kind == "space" and s.space.points == ("x", "y")
    assert cover_decide(s.topology, "a", ["b"])


def test_pos_absent_means_greatest_and_empty_means_none():
    greatest = parse_documents("topology: g\nbase: a\n")[0].topology
    empty = parse_documents("topology: e\nbase: a\npos:\n")[0].topology
    assert positivity_decide(greatest, "a", ["a"])
    assert not positivity_decide(empty, "a", ["a"])


@pytest.mark.parametrize("text, line, fragment", [
    ("topology: t\nbase: a\naxioms:\n  a => {a}\n", 4, "expected 'a -> {b, c}'"),
    ("topology: t\nbase: a\naxioms:\n  a -> {z}\n", 4, "not in the base"),
    ("topology: t\nbase: a, a\n", 2, "duplicate"),
    ("topology: t\nfoo: 1\n", 2, "unknown key"),
    ("base: a\n", 1, "missing 'topology:'"),
    ("topology: t\n", 1, "missing 'base:'"),
    ("space: s\nbase: a\npoints: x\nforcing:\n  y |- a\n", 5, "unknown point"),
    ("topology: t\nbase: a, b\naxioms:\n  a -> {b}\npos:\n  a >< {a}\n", 1, "cotransitivity"),
    ("space: s\nbase: a\npoints: x, y\nforcing:\n  x |- a\n", 1, "B2"),
    ("  a -> {b}\n", 1, "outside a section"),
])
def test_located_errors(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_documents(text, "f.txt")
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith("f.txt:")


def test_empty_file():
    with pytest.raises(ParseError):
        parse_documents("# nothing\n\n---\n")


def test_bundled_examples_load(data_dir):
    names = [d.name for d in load_documents(data_dir / "finite")]
    assert names == ["discrete-3", "no-point", "sierpinski", "split", "two-points", "three-points"]


def test_format_round_trip(data_dir):
    for doc in load_documents(data_dir / "finite"):
        again = parse_documents(format_topology(doc.topology))[0].topology
        assert again.cover == doc.topology.cover
        assert again.pos == doc.topology.pos
