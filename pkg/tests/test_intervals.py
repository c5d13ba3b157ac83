import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centralizer_lab.intervals import Interval, as_fraction, fraction_to_decimal, log_interval, sqrt_bounds

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=1000)


def iv(a, b):
    return Interval(min(a, b), max(a, b))


def test_as_fraction_is_exact_for_decimal_floats():
    assert as_fraction(1e-9) == Fraction(1, 10 ** 9)
    assert as_fraction("3/7") == Fraction(3, 7)
    assert as_fraction(" 0.25 ") == Fraction(1, 4)


@given(fractions, fractions, fractions, fractions, fractions, fractions)
def test_arithmetic_encloses_pointwise_results(a, b, c, d, s, t):
    x, y = iv(a, b), iv(c, d)
    u = x.lo + (x.hi - x.lo) * (s - int(s) if s >= 0 else 0)
    v = y.lo + (y.hi - y.lo) * (t - int(t) if t >= 0 else 0)
    assert (x + y).contains(u + v)
    assert (x - y).contains(u - v)
    assert (x * y).contains(u * v)
    if y.lo > 0 or y.hi < 0:
        assert (x / y).contains(u / v)


def test_division_by_interval_containing_zero_fails():
    with pytest.raises(ZeroDivisionError):
        Interval(1, 2) / Interval(-1, 1)


def test_powers_and_abs():
    x = Interval(-2, 1)
    assert x ** 2 == Interval(0, 4)
    assert x ** 3 == Interval(-8, 1)
    assert abs(x) == Interval(0, 2)


def test_certified_ordering():
    assert Interval(0, 1) < Interval(2, 3)
    assert not (Interval(0, 2) < Interval(1, 3))


@settings(max_examples=50)
@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=10 ** 6))
def test_log_interval_encloses_log(x):
    e = log_interval(Interval.point(x), Fraction(1, 10 ** 20))
    assert e.width <= Fraction(1, 10 ** 19)
    assert float(e.lo) <= math.log(x) + 1e-15 and math.log(x) - 1e-15 <= float(e.hi)
    assert e.lo <= e.hi


def test_log_of_one_is_exact_zero():
    assert log_interval(Interval.point(1)) == Interval.point(0)


def test_sqrt_bounds():
    s = sqrt_bounds(Fraction(5), bits=60)
    assert s.lo ** 2 <= 5 <= s.hi ** 2
    assert s.width < Fraction(1, 2 ** 55)


def test_json_and_decimal_rendering():
    x = Interval(Fraction(1, 3), Fraction(2, 3))
    doc = x.to_json(4)
    assert doc["lo"] == "1/3" and doc["hi"] == "2/3"
    assert doc["decimal"] == ["0.3333", "0.6667"]
    assert fraction_to_decimal(Fraction(-1, 3), 3, "floor") == "-0.334"
    assert str(Interval.point(Fraction(1, 9))) == "1/9"
