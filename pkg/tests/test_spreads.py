import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointfree.baire import DecidableSubset, check_derivation, periodic, random_stream
from pointfree.core import sequences
from pointfree.errors import DepthExhausted, FuelExhausted, InvalidSpread, ParseError
from pointfree.spreads import (
    Spread,
    fan_uniform_depth,
    generated_spreads,
    parse_spread,
    parse_spread_table,
    relativized_cover_via_baire,
    relativized_level_derivation,
    relativized_level_target,
    retract_seq,
    retract_stream,
    retraction_properties,
    uniform_depth_holds,
)

SPREADS = generated_spreads()


def test_binary_hand_examples():
    b = Spread.binary()
    assert retract_seq(b, (5,)) == (0,)
    assert retract_seq(b, (5, 7)) == (0, 0)
    assert retract_seq(b, (0, 1)) == (0, 1)
    assert retract_seq(b, ()) == ()


def test_other_spreads():
    assert retract_stream(Spread.min_entry(3), periodic((0,))).prefix(3) == (3, 3, 3)
    assert retract_seq(Spread.parity(), (4, 4, 4)) == (4, 1, 4)
    assert retract_seq(Spread.kary(3), (2, 5, 1)) == (2, 0, 1)


@pytest.mark.parametrize("u", SPREADS, ids=lambda u: u.name)
def test_generated_spreads_are_spreads(u):
    u.validate()


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(SPREADS), st.lists(st.integers(0, 9), max_size=7).map(tuple), st.integers(0, 9))
def test_retraction_properties(u, a, n):
    assert retraction_properties(u, a, n) == []


def test_spread_specs(tmp_path):
    assert parse_spread("kary:4").name == "kary:4"
    assert (2, 2) in parse_spread("min-entry:2") and (1,) not in parse_spread("min-entry:2")
    f = tmp_path / "t.txt"
    f.write_text("[1,0] no\n[1,1] no\n[1,2] no\ndefault: kary:4\n")
    t = parse_spread(f"table:{f}")
    assert retract_seq(t, (1, 1, 0)) == (1, 3, 0)
    for bad in ("ternary", "kary:x", "table:/does/not/exist"):
        with pytest.raises(ParseError):
            parse_spread(bad)


def test_spread_table_errors():
    with pytest.raises(ParseError):
        parse_spread_table("[1] maybe\ndefault: binary\n")
    with pytest.raises(ParseError):
        parse_spread_table("[1] no\n")
    with pytest.raises(InvalidSpread):  # after [0] nothing is allowed
        parse_spread_table("[0,0] no\n[0,1] no\ndefault: binary\n")


def test_invalid_spreads():
    with pytest.raises(InvalidSpread):
        Spread.kary(0)
    with pytest.raises(InvalidSpread):
        Spread(lambda a: False, "empty").validate()
    with pytest.raises(FuelExhausted):
        retract_seq(Spread(lambda a: all(x >= 50 for x in a), "far"), (1,), fuel=10)


# -- relativised covers ------------------------------------------------------

@pytest.mark.parametrize("u", SPREADS[:6], ids=lambda u: u.name)
def test_relativized_level_cover(u):
    a = next(x for x in sequences(2, range(6)) if len(x) == 1 and x in u)
    d = relativized_level_derivation(u, a, 2)
    target = relativized_level_target(u, a, 2)
    probes = [a + b for b in sequences(3, range(5)) if len(b) == 3]
    assert check_derivation(d, target, probes).ok


def test_reduction_eta():
    u = Spread.binary()
    r = relativized_cover_via_baire(u, (3,), DecidableSubset.nothing())
    assert r.eta() is not None  # [3] leaves the spread
    assert relativized_cover_via_baire(u, (1,), DecidableSubset.nothing()).eta() is None


# -- uniform depth -----------------------------------------------------------

def test_fan_depth_examples():
    assert fan_uniform_depth(DecidableSubset.level(3), 10) == 3
    assert uniform_depth_holds(DecidableSubset.level(3), 3)
    assert fan_uniform_depth(DecidableSubset.finite([()]), 5) == 0
    assert fan_uniform_depth(DecidableSubset.finite([(0,), (1, 0), (1, 1)]), 5) == 2
    with pytest.raises(DepthExhausted) as info:
        fan_uniform_depth(DecidableSubset.finite([(0,)]), 3000)
    assert "escapes" in str(info.value)


@settings(max_examples=100, deadline=None)
@given(st.frozensets(st.lists(st.integers(0, 1), max_size=4).map(tuple), max_size=8))
def test_fan_depth_agrees_with_brute_force(members):
    u = DecidableSubset.finite(members)
    try:
        k = fan_uniform_depth(u, 6)
    except DepthExhausted:
        assert not uniform_depth_holds(u, 6)
        return
    assert k == min(j for j in range(7) if uniform_depth_holds(u, j))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_retracted_streams_stay_in_spread(seed):
    for u in SPREADS:
        assert retract_stream(u, random_stream(seed)).prefix(6) in u
