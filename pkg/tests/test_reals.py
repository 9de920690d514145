from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointfree.errors import EnumerationTooLarge, FuelExhausted, InvalidInterval, NotCoverable, ParseError
from pointfree.reals import (
    I01,
    R,
    Approx,
    DiscardBelow,
    EtaR,
    Split,
    Widen,
    certificate_to_json,
    certify,
    finite_cover_decide,
    full_grid_oracle,
    grid_oracle,
    heine_borel,
    inner_cover,
    interval,
    list_cover,
    parse_cover,
    parse_enumerated_cover,
    parse_interval,
    parse_target,
    region,
    render_certificate,
    shrinking_cover,
    uncovered_point,
    validate_certificate,
)

HAND = [
    (R, (0, 1), [(0, 1)], True),
    (R, (0, 2), [(0, 1), (1, 2)], False),
    (I01, (2, 3), [], True),
    (R, (0, 2), [(F(-1, 4), F(3, 4)), (F(1, 2), F(3, 2)), (F(5, 4), F(9, 4))], True),
    (R, (0, 1), [(0, F(1, 2)), (F(1, 2), 1)], False),
    (I01, (-1, 2), [(F(-1, 10), F(6, 10)), (F(1, 2), F(11, 10))], True),
    (I01, (-1, 2), [(0, F(6, 10)), (F(1, 2), F(11, 10))], False),  # misses the point 0
    (I01, (0, 1), [(0, 1)], True),  # the ends are never required
    (I01, (-1, 0), [], True),
    (I01, (1, 3), [], True),
    (I01, (F(1, 2), 3), [(F(1, 4), 1)], False),  # misses the point 1
    (R, (0, 1), [], False),
]


def _problem(t, cover):
    return interval(*t), [interval(*iv) for iv in cover]


@pytest.mark.parametrize("mode, t, cover, expected", HAND)
def test_hand_instances(mode, t, cover, expected):
    t, cover = _problem(t, cover)
    assert finite_cover_decide(mode, t, cover) is expected
    assert grid_oracle(mode, t, cover) is expected
    assert full_grid_oracle(mode, t, cover) is expected


def test_witness_for_two_halves():
    t, cover = _problem((0, 2), [(0, 1), (1, 2)])
    assert uncovered_point(R, t, cover) == 1
    with pytest.raises(NotCoverable) as info:
        certify(R, t, cover)
    assert info.value.witness == 1


@pytest.mark.parametrize("mode, t, cover, expected", [h for h in HAND if h[3]])
def test_certificates_validate(mode, t, cover, expected):
    t, cover = _problem(t, cover)
    cert = certify(mode, t, cover)
    assert validate_certificate(mode, cert, cover, t) is None
    assert render_certificate(cert)
    assert certificate_to_json(cert)["interval"]


def test_certificate_shapes():
    t, cover = _problem((0, 1), [(0, 1)])
    assert isinstance(certify(R, t, cover), EtaR)
    t, cover = _problem((-1, 1), [(F(-1, 2), 2)])
    cert = certify(I01, t, cover)
    assert isinstance(cert, Split) and isinstance(cert.left, DiscardBelow)
    t, _ = _problem((-1, 0), [])
    assert isinstance(certify(I01, t, []), Approx)


def test_validator_rejects_bad_certificates():
    t, cover = _problem((0, 1), [(0, 1)])
    assert validate_certificate(R, EtaR(interval(0, 2)), cover) is not None
    assert validate_certificate(R, Widen(t, interval(F(1, 2), 1), EtaR(interval(F(1, 2), 1))), cover) is not None
    assert validate_certificate(R, DiscardBelow(interval(-2, -1)), cover) is not None
    bad_split = Split(t, F(1, 2), F(1, 4), EtaR(t), EtaR(t))
    assert validate_certificate(R, bad_split, cover) is not None


def test_intervals():
    with pytest.raises(InvalidInterval):
        interval(1, 1)
    iv = interval(0, 1)
    assert iv.contains(F(1, 2)) and not iv.contains(0)
    assert interval(F(1, 4), F(1, 2)).lt(iv) and not iv.lt(iv) and iv.leq(iv)
    assert str(interval(F(-1, 2), 2)) == "(-1/2,2/1)"


def test_region_conventions():
    assert region(I01, interval(2, 3)) is None
    r = region(I01, interval(-1, F(1, 2)))
    assert r.contains(0) and not r.contains(F(1, 2))
    assert not region(R, interval(0, 1)).contains(0)


def test_text_forms(tmp_path):
    assert parse_interval("(1/2, 3/4)") == interval(F(1, 2), F(3, 4))
    assert parse_target("-1/1..3/2") == interval(-1, F(3, 2))
    assert parse_cover("0/1,1/1\n# c\n\n1/1,2/1\n") == [interval(0, 1), interval(1, 2)]
    with pytest.raises(ParseError) as info:
        parse_cover("0/1,1/1\n1/1,1/2\n", "c.txt")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_target("0/1,1/1")
    f = tmp_path / "e.txt"
    f.write_text("0/1,1/1\n1/2,2/1\n")
    e = parse_enumerated_cover(f"file:{f}")
    assert e.prefix(3) == [interval(0, 1), interval(F(1, 2), 2), interval(F(1, 2), 2)]
    assert parse_enumerated_cover("constant:0/1,1/1")(5) == interval(0, 1)
    with pytest.raises(ParseError):
        parse_enumerated_cover("growing")


# -- Heine-Borel -------------------------------------------------------------

def test_heine_borel_shrinking():
    sub = heine_borel(I01, interval(-1, 2), shrinking_cover())
    assert sub == [interval(F(1, 2), 2), interval(F(-1, 3), F(1, 3)),
                   interval(F(-1, 4), F(1, 2)), interval(F(-1, 5), F(3, 5))]
    assert not finite_cover_decide(I01, interval(-1, 2), sub[:-1])


def test_heine_borel_fuel():
    with pytest.raises(FuelExhausted):
        heine_borel(R, interval(0, 1), inner_cover(), fuel=40)
    # the open unit interval is never finitely covered by the inner family
    with pytest.raises(FuelExhausted):
        heine_borel(I01, interval(0, 1), inner_cover(), fuel=40)


def test_full_grid_refuses_large_grids():
    t, cover = _problem((0, 1000), [(F(1, 997), F(1, 991))])
    with pytest.raises(EnumerationTooLarge):
        full_grid_oracle(R, t, cover)


def test_list_cover_needs_items():
    with pytest.raises(ParseError):
        list_cover([])


# -- properties --------------------------------------------------------------

# denominators dividing 24 keep the full grid small
rationals = st.builds(lambda n, d: F(n, d), st.integers(-24, 48), st.sampled_from([1, 2, 3, 4, 6, 8, 12, 24]))


@st.composite
def intervals(draw):
    p = draw(rationals)
    q = draw(rationals.filter(lambda x: x != p))
    return interval(min(p, q), max(p, q))


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([R, I01]), intervals(), st.lists(intervals(), max_size=6))
def test_decision_agrees_with_both_oracles(mode, t, cover):
    got = finite_cover_decide(mode, t, cover)
    assert got == grid_oracle(mode, t, cover) == full_grid_oracle(mode, t, cover)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([R, I01]), intervals(), st.lists(intervals(), max_size=6))
def test_certify_or_refute(mode, t, cover):
    if finite_cover_decide(mode, t, cover):
        cert = certify(mode, t, cover)
        assert validate_certificate(mode, cert, cover, t) is None
    else:
        w = uncovered_point(mode, t, cover)
        assert region(mode, t).contains(w)
        assert not any(iv.contains(w) for iv in cover)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([R, I01]), intervals(), st.lists(intervals(), max_size=4), intervals())
def test_cover_is_monotone(mode, t, cover, extra):
    if finite_cover_decide(mode, t, cover):
        assert finite_cover_decide(mode, t, cover + [extra])
