import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointfree.baire import alpha_point, periodic, random_stream
from pointfree.core import j0, j1, pair, sequences
from pointfree.errors import FuelExhausted, NotSingleValued, ParseError
from pointfree.maps import (
    Pi01Presentation,
    SeqNatRelation,
    Sigma01Presentation,
    check_pfunction_conditions,
    eval_point,
    format_fiber_table,
    modulus,
    monotonise,
    parse_fiber_table,
    parse_relation,
    parse_sigma_presentation,
    pi01_bar_constructions,
    pi01_domain_refuter,
    pi01_modulus,
    sbar_prime,
    sigma_bar_transfer,
    sigma_to_decidable_bar,
)

BUILTINS = ["first-entry", "sum-first-k:3", "constant:7"]


def test_builtins():
    assert modulus(SeqNatRelation.first_entry(), periodic((4, 2))) == ((4,), 4)
    assert modulus(SeqNatRelation.sum_first_k(2), periodic((4, 2))) == ((4, 2), 6)
    assert modulus(SeqNatRelation.constant(7), periodic((4,))) == ((), 7)
    with pytest.raises(FuelExhausted):
        modulus(SeqNatRelation.empty(), periodic((0,)), fuel=50)


def test_multivalued_fiber_is_reported():
    s = SeqNatRelation.from_table({(1,): {2, 3}})
    with pytest.raises(NotSingleValued) as info:
        eval_point(s, alpha_point((1,)))
    assert info.value.seq == (1,) and info.value.values == {2, 3}


def test_monotonise():
    s = SeqNatRelation.from_table({(1,): {5}})
    m = monotonise(s)
    assert m.evaluate((1, 0, 3)) == {5} and m.evaluate((0, 1)) == frozenset()
    assert not m.violations(sequences(3, (0, 1, 2)))


def test_relation_specs(tmp_path):
    assert parse_relation("sum-first-k:2").evaluate((1, 2, 3)) == {3}
    f = tmp_path / "r.txt"
    f.write_text("[0] -> 1\n[0] -> 2\n[1,1] -> 0  # comment\n")
    s = parse_relation(f"table:{f}")
    assert s.evaluate((0,)) == {1, 2} and s.evaluate((1, 1)) == {0}
    assert format_fiber_table(s, [(0,), (1, 1)]) == "[0] -> 1\n[0] -> 2\n[1,1] -> 0"
    with pytest.raises(ParseError) as info:
        parse_fiber_table("[0] -> 1\n[0] => 2\n", "x")
    assert info.value.line == 2
    for bad in ("sum-first-k:x", "fancy", "constant:-1"):
        with pytest.raises(ParseError):
            parse_relation(bad)


def test_pfunction_report():
    ok = check_pfunction_conditions(SeqNatRelation.first_entry(), 3)
    assert ok.single_valued and ok.bar_confirmed and ok.bar_depth == 1
    no_bar = check_pfunction_conditions(SeqNatRelation.from_table({(0,): {1}}), 4)
    assert not no_bar.bar_confirmed and no_bar.bar_status == "bar-not-confirmed"
    multi = check_pfunction_conditions(SeqNatRelation.from_table({(1,): {1, 2}}), 3)
    assert not multi.single_valued and multi.multi_valued_at == ((1,), (1, 2))


@pytest.mark.parametrize("name", BUILTINS)
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), tail=st.integers(0, 10_000))
def test_value_is_fixed_by_the_modulus(name, seed, tail):
    s = parse_relation(name)
    a, n = modulus(s, random_stream(seed))
    assert modulus(s, random_stream(f"t{tail}", head=a))[1] == n


# -- Sigma-0-1 ---------------------------------------------------------------

def test_sigma_presentations():
    assert parse_sigma_presentation("length-at-least:2").decide((1, 1), 0)
    assert parse_sigma_presentation("entry-equals:3").decide((0, 3), 1)
    assert not parse_sigma_presentation("entry-equals:3").decide((0, 3), 0)
    assert parse_sigma_presentation("sum-at-least:4").decide((2, 2), 0)
    assert parse_sigma_presentation("always").witness((), 5) == 0
    assert parse_sigma_presentation("never").witness((), 5) is None
    with pytest.raises(ParseError):
        parse_sigma_presentation("sometimes")


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 5), max_size=12).map(tuple))
def test_decidable_bar_reads_the_coded_segment(a):
    p = Sigma01Presentation(lambda b, n: sum(b) == n, "sum")
    c = len(a)
    assert (a in sigma_to_decidable_bar(p)) == (sum(a[:j0(c)]) == j1(c))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 6), st.integers(0, 10_000))
def test_sigma_transfer_bound(k, seed):
    p = Sigma01Presentation(lambda a, n: len(a) >= k, f"length>={k}")
    r = sigma_bar_transfer(p, random_stream(seed), 10, 10)
    assert r.u_hit == (k, 0) and r.ok and r.v_hit <= pair(k, 0)


def test_sigma_transfer_without_hit():
    r = sigma_bar_transfer(Sigma01Presentation(lambda a, n: False), periodic((1,)), 5, 5)
    assert r.u_hit is None and r.ok


# -- Pi-0-1 ------------------------------------------------------------------

def test_domain_refuter():
    s = SeqNatRelation.first_entry()
    v = pi01_domain_refuter(s, (), 3)
    assert v.refuted and v.witness == (1,) and v.values == (0, 1)
    assert not pi01_domain_refuter(s, (4,), 3).refuted
    m = pi01_modulus(s, 3)
    assert m.evaluate(()) == frozenset() and m.evaluate((4, 9)) == {4}


def test_bar_constructions_example():
    # D(a, n) := len a >= 2, so Ubar is len >= 3 and s takes the value 2
    b = pi01_bar_constructions(Pi01Presentation(lambda a, n: len(a) >= 2, "len>=2"))
    assert [b.dbar(a) for a in [(), (5,), (5, 6), (5, 6, 7)]] == [True, False, False, True]
    assert not b.ubar.member_to((5, 6), 10) and b.ubar.member_to((5, 6, 7), 10)
    assert b.s.evaluate((5, 6)) == frozenset()
    assert b.s.evaluate((5, 6, 7)) == {2} == b.s.evaluate((1, 2, 3, 4))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 3), st.lists(st.integers(0, 4), max_size=6).map(tuple))
def test_bar_construction_is_single_valued(k, a):
    b = pi01_bar_constructions(Pi01Presentation(lambda x, n: sum(x) + n >= k, f"k={k}"))
    assert len(b.s.evaluate(a)) <= 1
    for n in b.s.evaluate(a):
        assert n < max(len(a), 2)


def test_sbar_prime():
    base = SeqNatRelation.from_table({(1,): {0, 3}})
    sp = sbar_prime(base)
    assert sp.evaluate((1,)) == {0}
    assert sp.evaluate((1, 2, 3, 4)) == {0, 3}
    assert sp.evaluate((2, 2)) == frozenset()
