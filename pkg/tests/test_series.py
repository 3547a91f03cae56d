"""Shifted factorials, certified q-products, intervals, rational powers."""

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mipoly.series import (
    DEFAULT_EPS,
    Interval,
    _iroot_floor,
    as_interval,
    pochhammer,
    q_pochhammer,
    rational_power,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=10)


def test_pochhammer_factorial_oracle():
    for k in range(8):
        assert pochhammer(1, k) == math.factorial(k)
    assert pochhammer(F(1, 2), 3) == F(1, 2) * F(3, 2) * F(5, 2)
    assert pochhammer(-3, 5) == 0  # terminates past a negative integer
    assert pochhammer(7, 0) == 1


def test_q_pochhammer_finite_product():
    a, q = F(1, 3), F(1, 2)
    expected = (1 - a) * (1 - a * q) * (1 - a * q**2)
    assert q_pochhammer(a, q, 3) == expected
    assert q_pochhammer(a, q, 0) == 1


def test_q_pochhammer_infinite_is_certified():
    a, q = F(1, 3), F(1, 2)
    enc = q_pochhammer(a, q, None)
    # splitting off exact factors must keep the enclosures consistent:
    # (a; q)_inf = (a; q)_5 * (a q^5; q)_inf
    head = q_pochhammer(a, q, 5)
    tail = q_pochhammer(a * q**5, q, None)
    split = as_interval(head) * tail
    assert enc.overlaps(split)
    assert enc.width <= 2 * DEFAULT_EPS
    # crude but independent bracket from 40 exact factors
    p40 = q_pochhammer(a, q, 40)
    assert enc.lo <= p40 and p40 * (1 - a * q**40 / (1 - q)) <= enc.hi


def test_q_pochhammer_tighter_eps_nests():
    a, q = F(1, 5), F(2, 3)
    loose = q_pochhammer(a, q, None, eps=F(1, 10**6))
    tight = q_pochhammer(a, q, None, eps=F(1, 10**24))
    assert loose.lo <= tight.lo <= tight.hi <= loose.hi


def test_interval_basics():
    iv = Interval(F(1, 3), F(1, 2))
    assert F(2, 5) in iv
    assert iv.width == F(1, 6)
    assert iv.midpoint == F(5, 12)
    assert iv.overlaps(Interval(F(1, 2), 1))
    assert not iv.overlaps(Interval(2, 3))
    assert Interval.exact(F(3)).width == 0
    with pytest.raises(ValueError):
        Interval(1, 0)


@given(rationals, rationals, rationals, rationals, rationals, rationals)
@settings(max_examples=60, deadline=None)
def test_interval_arithmetic_contains_pointwise(a, b, c, d, u, v):
    lo1, hi1 = min(a, b), max(a, b)
    lo2, hi2 = min(c, d), max(c, d)
    x = lo1 + abs(u) % 1 * (hi1 - lo1)
    y = lo2 + abs(v) % 1 * (hi2 - lo2)
    i1, i2 = Interval(lo1, hi1), Interval(lo2, hi2)
    assert x + y in i1 + i2
    assert x - y in i1 - i2
    assert x * y in i1 * i2
    if lo2 > 0 or hi2 < 0:
        assert x / y in i1 / i2


def test_interval_division_through_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        Interval(1, 2) / Interval(-1, 1)


@given(st.integers(min_value=0, max_value=10**12), st.integers(min_value=1, max_value=6))
@settings(max_examples=80, deadline=None)
def test_iroot_floor(n, r):
    t = _iroot_floor(n, r)
    assert t**r <= n < (t + 1) ** r


def test_rational_power_exact_cases():
    enc5 = rational_power(F(1, 2), F(5))
    assert (enc5.lo, enc5.hi) == (F(1, 32), F(1, 32))
    enc = rational_power(F(4, 9), F(3, 2))
    assert F(8, 27) in enc
    assert enc.width <= DEFAULT_EPS


def test_rational_power_squares_back():
    enc = rational_power(F(1, 2), F(5, 2))
    sq = enc * enc
    assert F(1, 32) in sq
