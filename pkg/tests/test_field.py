from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jnorm.field import (
    EPS,
    QQ,
    QQ_EPS,
    FieldError,
    RatFunc,
    field_arith,
    field_compare,
    format_scalar,
    is_infinitesimal,
    parse_scalar,
    standard_part,
)

from strategies import rationals, ratfuncs


def test_difference_of_squares():
    assert (1 + EPS) * (1 - EPS) == 1 - EPS**2
    assert format_scalar((1 + EPS) * (1 - EPS)) == "1 - e^2"


def test_eps_is_positive_and_below_every_positive_rational():
    assert EPS > 0
    assert EPS < Fraction(1, 10**9)
    assert -EPS < 0
    assert EPS**2 < EPS


def test_standard_part():
    assert standard_part(Fraction(3, 2) + EPS) == Fraction(3, 2)
    assert standard_part(1 / EPS) is None
    assert standard_part((1 + EPS) / (2 - EPS)) == Fraction(1, 2)
    assert is_infinitesimal(EPS**3 / (1 + EPS))
    assert not is_infinitesimal(1 + EPS)


def test_parse_and_format():
    x = parse_scalar("(1 - e)/(3 + e)", QQ_EPS)
    assert x * (3 + EPS) == 1 - EPS
    assert parse_scalar(format_scalar(x), QQ_EPS) == x
    assert format_scalar(parse_scalar("1/(1-e)", QQ_EPS)) == "(1)/(1 - e)"
    assert parse_scalar("-7/3", QQ) == Fraction(-7, 3)
    assert parse_scalar("2^3 - 1", QQ) == 7


@pytest.mark.parametrize("text", ["1/0", "(1", "e", "2 $ 3", ""])
def test_parse_errors(text):
    with pytest.raises((FieldError, ZeroDivisionError)):
        parse_scalar(text, QQ)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        field_arith("div", Fraction(1), Fraction(0))
    with pytest.raises(ZeroDivisionError):
        field_arith("div", EPS, RatFunc.const(0))


def test_compare_rejects_mixed_fields():
    assert field_compare(Fraction(1), Fraction(2)) == "LT"
    assert field_compare(EPS, RatFunc.const(0)) == "GT"
    with pytest.raises(FieldError):
        field_compare(EPS, Fraction(1))


def test_canonical_form_makes_equal_elements_identical():
    a = RatFunc([2, 2], [4])  # (1 + e)/2
    b = RatFunc([1, 2, 1], [2, 2])  # (1 + e)^2 / (2 (1 + e))
    assert a == b and a.num == b.num and a.den == b.den and hash(a) == hash(b)
    assert hash(RatFunc.const(Fraction(3, 4))) == hash(Fraction(3, 4))


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if a:
        assert a * (1 / a) == 1


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_order_axioms(a, b, c):
    assert sum([a < b, a == b, a > b]) == 1
    if a < b:
        assert a + c < b + c
        if c > 0:
            assert a * c < b * c
    if a > 0 and b > 0:
        assert a * b > 0


@given(ratfuncs())
def test_round_trip(a):
    assert parse_scalar(format_scalar(a), QQ_EPS) == a


@given(rationals, rationals)
def test_rational_subfield_agrees_with_fraction(x, y):
    X, Y = RatFunc.const(x), RatFunc.const(y)
    assert (X + Y).constant() == x + y
    assert (X * Y).constant() == x * y
    assert (X < Y) == (x < y)


@given(ratfuncs(), st.integers(min_value=1, max_value=6))
def test_infinitesimal_perturbation_preserves_standard_part(a, k):
    s = standard_part(a)
    if s is not None:
        assert standard_part(a + EPS**k) == s


@given(ratfuncs(), ratfuncs())
def test_standard_part_is_additive(a, b):
    sa, sb, s = standard_part(a), standard_part(b), standard_part(a + b)
    if sa is not None and sb is not None:
        assert s == sa + sb


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_eps_powers_are_infinitesimal(n):
    for q in (Fraction(1, 10**30), Fraction(1, 3), Fraction(7)):
        assert 0 < EPS**n < q


def _field_sample_check(rng, make, count):
    bad = 0
    for _ in range(count):
        a, b, c = make(), make(), make()
        bad += (a + b) + c != a + (b + c)
        bad += (a * b) * c != a * (b * c)
        bad += a * (b + c) != a * b + a * c
        if a < b:
            bad += not (a + c < b + c)
            if c > 0:
                bad += not (a * c < b * c)
    return bad


def test_ordered_field_axioms_on_many_samples():
    import random

    rng = random.Random(11)

    def rat():
        return Fraction(rng.randint(-999, 999), rng.randint(1, 99))

    def rf():
        num = [rat() for _ in range(rng.randint(1, 3))]
        den = [rat() for _ in range(rng.randint(1, 2))]
        if not any(den):
            den = [Fraction(1)]
        return RatFunc(num, den)

    assert _field_sample_check(rng, rat, 10**4) == 0
    assert _field_sample_check(rng, rf, 10**4) == 0


def test_documented_examples():
    assert field_arith("add", Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
    assert field_arith("div", 1, 2) == Fraction(1, 2)
    assert field_arith("neg", EPS) == -EPS and field_arith("abs", -EPS) == EPS
    assert field_compare(Fraction(13, 40), Fraction(1)) == "LT"
    assert standard_part(Fraction(7, 5)) == Fraction(7, 5)
    x = field_arith("div", RatFunc.const(1), 1 - EPS)
    assert x.den[0] > 0
