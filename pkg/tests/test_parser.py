from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from teven.parser import BinOp, ParseError, Var, lower, parse, parse_poly
from teven.poly import MultiPoly

k1, k2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)


def test_examples():
    ast = parse("k1^2*k2 + k1*k2^2", 2)
    assert isinstance(ast, BinOp)
    assert lower(ast, 2) == k1**2 * k2 + k1 * k2**2
    assert parse_poly("1/2*k1 - 3", 1) == MultiPoly.var(1, 1) * Fraction(1, 2) - 3
    assert parse_poly("(k1+k2)^2", 2) == k1**2 + 2 * k1 * k2 + k2**2
    assert parse_poly("0*k1", 1).is_zero()
    k = [MultiPoly.var(3, i) for i in (1, 2, 3)]
    assert parse_poly("k1*k2*k3", 3) == k[0] * k[1] * k[2]
    assert parse("k2", 2) == Var(2)


def test_precedence_and_unary_minus():
    assert parse_poly("-k1^2", 1) == -(MultiPoly.var(1, 1) ** 2)
    assert parse_poly("2-3-4", 1) == MultiPoly.constant(1, -5)
    assert parse_poly("k1*-k2", 2) == -k1 * k2
    assert parse_poly(" k1 ^ 2 ", 1) == MultiPoly.var(1, 1) ** 2


@pytest.mark.parametrize(
    "src, offset",
    [
        ("k3", 0),
        ("k1 + x1", 5),
        ("k1^k2", 3),
        ("k1/k2", 2),
        ("k1^65", 3),
        ("(k1", 3),
        ("", 0),
        ("k0", 0),
        ("1/0", 2),
        ("k", 0),
        ("k1 k2", 3),
    ],
)
def test_errors_are_located(src, offset):
    with pytest.raises(ParseError) as err:
        parse(src, 2)
    assert err.value.offset == offset


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(ParseError):
        parse("(" * 5000 + "k1" + ")" * 5000, 1)


@settings(max_examples=300)
@given(st.binary(max_size=40))
def test_arbitrary_bytes_never_crash(data):
    try:
        parse(data, 3)
    except ParseError as err:
        assert err.offset >= 0


@settings(max_examples=300)
@given(st.text(alphabet="k123()+-*^/ 0", max_size=25))
def test_arbitrary_text_never_crash(src):
    try:
        parse(src, 3)
    except ParseError:
        pass


polys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2)),
    st.fractions(min_value=-9, max_value=9, max_denominator=9),
    max_size=6,
).map(lambda d: MultiPoly(3, d))


@given(polys)
def test_print_parse_round_trip(p):
    assert parse_poly(p.to_text(), 3) == p
