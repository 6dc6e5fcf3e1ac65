import decimal
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dividedcell.errors import DivByZero, FieldMismatch, SurdSyntaxError
from dividedcell.exactnum import (
    Surd,
    as_surd,
    floor,
    floor_quot,
    format_surd,
    parse_surd,
    sign,
    sqrt,
    squarefree_split,
    surd_from_json,
    surd_to_json,
    to_decimal,
)

R3, R5 = sqrt(3), sqrt(5)


def test_difference_of_squares():
    assert (1 + R3) * (1 - R3) == -2


def test_additive_identity():
    assert (1 + R3) + 0 == 1 + R3


def test_scalar_division():
    assert (3 + R5) / -4 == Surd(5, Fraction(-3, 4), Fraction(-1, 4))


@pytest.mark.parametrize("x, expected", [(5 - 2 * R5, 1), (1 - R3, -1), (Surd(), 0)])
def test_sign(x, expected):
    assert sign(x) == expected


def test_floor_examples():
    assert floor(2 + R5) == 4
    assert floor_quot(1 + R3, 1) == 2
    assert floor(-(3 + R5) / 4) == -2


def test_parse_examples():
    assert parse_surd("1+sqrt(3)") == Surd(3, 1, 1)
    assert parse_surd("-3/4-1/4*sqrt(5)") == Surd(5, Fraction(-3, 4), Fraction(-1, 4))
    twelve = parse_surd("sqrt(12)")
    assert (twelve.d, twelve.r, twelve.s) == (3, 0, 2)
    assert twelve * twelve == 12


def test_perfect_square_folds():
    x = parse_surd("3+sqrt(4)")
    assert x == 5 and x.d == 0 and x.s == 0


def test_format():
    assert format_surd(2 * R3) == "2*sqrt(3)"
    assert format_surd(Surd(5, Fraction(-3, 4), Fraction(-1, 4))) == "-3/4-1/4*sqrt(5)"
    assert format_surd(-R3) == "-sqrt(3)"
    assert format_surd(Fraction(7, 2)) == "7/2"


def test_negative_radicand_reports_position():
    with pytest.raises(SurdSyntaxError) as info:
        parse_surd("1+sqrt(-3)")
    assert info.value.position == 7


@pytest.mark.parametrize("text", ["", "1+", "sqrt(3", "2**sqrt(3)", "1/0", "x"])
def test_syntax_errors(text):
    with pytest.raises(SurdSyntaxError):
        parse_surd(text)


def test_mixed_fields():
    with pytest.raises(FieldMismatch):
        parse_surd("sqrt(2)+sqrt(3)")
    with pytest.raises(FieldMismatch):
        sqrt(2) + sqrt(3)


def test_div_by_zero():
    with pytest.raises(DivByZero):
        R3 / 0
    with pytest.raises(ZeroDivisionError):
        floor_quot(R3, Surd())


def test_squarefree_split():
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(50) == (5, 2)


def test_json_form():
    x = Surd(5, Fraction(-3, 4), Fraction(-1, 4))
    assert surd_to_json(x) == {"d": 5, "r": "-3/4", "s": "-1/4"}
    assert surd_from_json(surd_to_json(x)) == x
    assert surd_from_json("1+sqrt(3)") == 1 + R3


def test_to_decimal():
    assert str(to_decimal(R5, 20)) == "2.2360679774997896964"


def test_hash_consistency():
    assert hash(parse_surd("2/4+sqrt(12)")) == hash(Fraction(1, 2) + 2 * R3)
    assert as_surd(3) == Surd(0, 3)


# -- properties ------------------------------------------------------------------

rats = st.fractions(min_value=-50, max_value=50, max_denominator=30)
fields = st.sampled_from([2, 3, 5, 7])


@st.composite
def surd_triples(draw):
    d = draw(fields)
    return tuple(Surd(d, draw(rats), draw(rats)) for _ in range(3))


@settings(max_examples=200, deadline=None)
@given(surd_triples())
def test_field_axioms(t):
    x, y, z = t
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x:
        assert x * (1 / x) == 1


@settings(max_examples=300, deadline=None)
@given(fields, rats, rats)
def test_format_parse_round_trip(d, r, s):
    x = Surd(d, r, s)
    assert parse_surd(format_surd(x)) == x


def _random_surds(seed, n):
    rng = random.Random(seed)
    for _ in range(n):
        d = rng.choice([2, 3, 5, 6, 7, 10, 11])
        yield Surd(d, Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 999)), Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 999)))


def test_floor_brackets_value():
    for x in _random_surds(11, 10_000):
        f = floor(x)
        assert f <= x < f + 1


def test_sign_matches_high_precision_decimal():
    ctx = decimal.Context(prec=100)
    for x in _random_surds(12, 10_000):
        approx = ctx.add(ctx.divide(decimal.Decimal(x.p), decimal.Decimal(x.m)),
                         ctx.multiply(ctx.divide(decimal.Decimal(x.q), decimal.Decimal(x.m)), ctx.sqrt(decimal.Decimal(x.d))))
        expected = (approx > 0) - (approx < 0)
        assert sign(x) == expected
