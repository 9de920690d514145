from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pointfree.core import (
    NIL,
    concat,
    extend,
    format_rational,
    format_seq,
    initial_segment,
    j0,
    j1,
    leq_b,
    pair,
    parse_rational,
    parse_seq,
    prefixes,
    sequences,
    split_last,
    unpair,
)
from pointfree.errors import NonEmptyRequired, ParseError

seqs = st.lists(st.integers(0, 20), max_size=8).map(tuple)
nats = st.integers(0, 10_000)


def test_sequence_tokens():
    assert format_seq((1, 0, 2)) == "[1,0,2]"
    assert format_seq(NIL) == "[]"
    assert parse_seq("[1, 0,2]") == (1, 0, 2)
    assert parse_seq("nil") == NIL == parse_seq("[]")
    for bad in ("1,2", "[1,-2]", "[a]", "[1,,2]"):
        with pytest.raises(ParseError):
            parse_seq(bad)


def test_rational_tokens():
    assert format_rational(Fraction(2, 4)) == "1/2"
    assert format_rational(Fraction(1)) == "1/1"
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("2") == 2
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("x")


def test_sequence_operations():
    assert concat((1,), (2, 3)) == (1, 2, 3)
    assert extend((1,), 4) == (1, 4)
    assert initial_segment((5, 6, 7), 2) == (5, 6)
    assert list(prefixes((1, 2))) == [(), (1,), (1, 2)]
    assert split_last((3, 4)) == ((3,), 4)
    with pytest.raises(NonEmptyRequired):
        split_last(NIL)
    # leq_b(a, b): b is an initial segment of a
    assert leq_b((1, 2), (1,)) and leq_b((1,), ()) and not leq_b((1,), (1, 2))


def test_sequences_order():
    out = list(sequences(2, (1, 0)))
    assert out == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]


def test_pair_small_values():
    assert [pair(n, m) for n, m in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]] == [0, 1, 2, 3, 4, 5]
    with pytest.raises(ValueError):
        pair(-1, 0)


@given(nats, nats)
def test_pair_round_trip(n, m):
    c = pair(n, m)
    assert unpair(c) == (n, m)
    assert n <= c and m <= c


@given(nats)
def test_unpair_is_onto(c):
    n, m = unpair(c)
    assert pair(n, m) == c
    assert j0(c) <= c and j1(c) <= c


@given(seqs)
def test_seq_token_round_trip(a):
    assert parse_seq(format_seq(a)) == a


@given(seqs, seqs)
def test_leq_b_is_prefix(a, b):
    assert leq_b(concat(a, b), a)
    assert leq_b(a, b) == (a[:len(b)] == b)


@given(st.fractions(max_denominator=1000))
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x
