import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matchgates.numeric import ONE, ZERO, GaussianRational, LiteralError, format, parse

from conftest import gaussians, nonzero_gaussians


def G(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def test_addition_examples():
    assert G("1/2") + G("1/2") == G(1)
    assert G(0, 1) + G(0, -1) == ZERO
    assert G("1/3", "1/6") + G("1/6", "1/3") == G("1/2", "1/2")


def test_multiplication_examples():
    i = G(0, 1)
    assert i * i == G(-1)
    assert G(2).inv() == G("1/2")
    assert G(1, 1) * G(1, -1) == G(2)
    assert -G(3, -4) == G(-3, 4)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_components_are_reduced():
    x = GaussianRational(Fraction(4, -6), Fraction(10, 4))
    assert (x.re.numerator, x.re.denominator) == (-2, 3)
    assert (x.im.numerator, x.im.denominator) == (5, 2)
    assert x == G("-2/3", "5/2") and hash(x) == hash(G("-2/3", "5/2"))


def test_mixed_operands():
    assert G(1, 1) + 1 == G(2, 1)
    assert 2 * G(0, 1) == G(0, 2)
    assert 1 - G(0, 1) == G(1, -1)
    assert G(3) == 3 and G(0) == 0
    assert not ZERO and G(0, 1)


def test_immutable():
    with pytest.raises(AttributeError):
        ONE._re = Fraction(2)


@pytest.mark.parametrize(
    "text, value",
    [
        ("3/2", G("3/2")),
        ("-1", G(-1)),
        ("1/3+2/5i", G("1/3", "2/5")),
        ("2i", G(0, 2)),
        ("-1/2i", G(0, "-1/2")),
        ("0-3i", G(0, -3)),
        ("6/4", G("3/2")),
    ],
)
def test_parse(text, value):
    assert parse(text) == value


@pytest.mark.parametrize(
    "text, pos",
    [
        ("", 0),
        ("abc", 0),
        ("1/0", 2),
        ("1/", 2),
        ("1+2", 3),
        ("1 + 2i", 1),
        ("2ix", 2),
        ("--1", 1),
        ("1+-2i", 2),
        ("i", 0),
    ],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(LiteralError) as info:
        parse(text)
    assert info.value.pos == pos


def test_format_is_canonical():
    assert format(G(3)) == "3"
    assert format(G("-1/2")) == "-1/2"
    assert format(G(0, -2)) == "-2i"
    assert format(G("1/3", "-2/5")) == "1/3-2/5i"
    assert format(ZERO) == "0"


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + ZERO == a and a * ONE == a
    assert a + (-a) == ZERO
    assert a - b == a + (-b)


@given(nonzero_gaussians, gaussians)
def test_inverses(a, b):
    assert a * a.inv() == ONE
    assert (b / a) * a == b


@given(gaussians)
def test_format_parse_round_trip(x):
    assert parse(format(x)) == x


def test_format_parse_round_trip_bulk():
    rng = random.Random(2024)
    for _ in range(10_000):
        x = GaussianRational(
            Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**6)),
            Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**6)) if rng.random() < 0.7 else 0,
        )
        assert parse(format(x)) == x


@given(gaussians, st.integers(-4, 4))
def test_integer_powers(x, n):
    if not x and n < 0:
        return
    expected = ONE
    for _ in range(abs(n)):
        expected = expected * x
    if n < 0:
        expected = expected.inv()
    assert x**n == expected
