"""Closed intervals with exact rational endpoints.

Arithmetic is exact (endpoints are :class:`fractions.Fraction`), so every
enclosure produced by composing these operations is a true enclosure.  The
only transcendental operation, :func:`log_interval`, is delegated to mpmath's
directed-rounding interval kernel and the result is converted back to exact
rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from mpmath.libmp import from_rational, mpi_log, round_ceiling, round_floor, to_rational


def as_fraction(x) -> Fraction:
    """Convert ints, Fractions, decimal strings and floats to a Fraction.

    Floats go through ``repr`` so that ``1e-9`` becomes exactly 1/10**9.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(str(x).strip())


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_fraction(self.lo), as_fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> "Interval":
        x = as_fraction(x)
        return cls(x, x)

    @classmethod
    def hull(cls, *xs) -> "Interval":
        xs = [as_fraction(x) for x in xs]
        return cls(min(xs), max(xs))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        x = as_fraction(x)
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other: "Interval") -> "Interval":
        if not self.intersects(other):
            raise ValueError("disjoint intervals")
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def widen(self, r) -> "Interval":
        r = as_fraction(r)
        return Interval(self.lo - r, self.hi + r)

    def _coerce(self, other) -> "Interval":
        return other if isinstance(other, Interval) else Interval.point(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = self._coerce(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_point and other.is_point:
            return Interval.point(self.lo * other.lo)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        if other.is_point:
            return self * (1 / other.lo)
        return self * Interval.hull(1 / other.lo, 1 / other.hi)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def __pow__(self, k: int):
        if k < 0:
            return 1 / (self ** -k)
        if k % 2 == 0:
            a = abs(self)
            return Interval(a.lo ** k, a.hi ** k)
        # odd powers are monotone
        return Interval(self.lo ** k, self.hi ** k)

    def __lt__(self, other):
        # certified strict ordering
        other = self._coerce(other)
        return self.hi < other.lo

    def __gt__(self, other):
        other = self._coerce(other)
        return self.lo > other.hi

    def to_json(self, digits: int = 12) -> dict:
        return {
            "lo": fraction_str(self.lo),
            "hi": fraction_str(self.hi),
            "decimal": [fraction_to_decimal(self.lo, digits, "floor"),
                        fraction_to_decimal(self.hi, digits, "ceiling")],
        }

    def __str__(self):
        if self.is_point:
            return str(self.lo)
        return f"[{fraction_to_decimal(self.lo, 12, 'floor')}, {fraction_to_decimal(self.hi, 12, 'ceiling')}]"


def fraction_str(x: Fraction) -> str:
    return str(as_fraction(x))


def fraction_to_decimal(x, digits: int = 12, rounding: str = "nearest") -> str:
    """Render ``x`` with ``digits`` decimals; ``floor``/``ceiling`` give outward rounding."""
    x = as_fraction(x)
    scaled = x * 10 ** digits
    if rounding == "floor":
        n = math.floor(scaled)
    elif rounding == "ceiling":
        n = math.ceil(scaled)
    else:
        n = round(scaled)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10 ** digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def _mpf_to_fraction(v) -> Fraction:
    p, q = to_rational(v)
    return Fraction(int(p), int(q))


def _bits_for(width) -> int:
    width = as_fraction(width)
    if width <= 0:
        return 256
    return max(64, width.denominator.bit_length() - width.numerator.bit_length() + 34)


def log_interval(x: Interval, precision_hint=None) -> Interval:
    """Certified enclosure of ``log`` over a positive interval.

    ``precision_hint`` is the target width; the working precision is chosen so
    that the rounding contribution is far below it.
    """
    if x.lo <= 0:
        raise ValueError("log of a non-positive interval")
    if x.lo == 1 and x.hi == 1:
        return Interval.point(0)
    hint = precision_hint if precision_hint is not None else max(x.width, Fraction(1, 2 ** 60))
    prec = _bits_for(hint) + 16
    lo = from_rational(x.lo.numerator, x.lo.denominator, prec, round_floor)
    hi = from_rational(x.hi.numerator, x.hi.denominator, prec, round_ceiling)
    a, b = mpi_log((lo, hi), prec)
    return Interval(_mpf_to_fraction(a), _mpf_to_fraction(b))


def sqrt_bounds(x: Fraction, bits: int = 80) -> Interval:
    """Rational enclosure of the square root of a nonnegative rational."""
    x = as_fraction(x)
    if x < 0:
        raise ValueError("sqrt of a negative number")
    if x == 0:
        return Interval.point(0)
    scale = 4 ** bits
    n = x.numerator * scale // x.denominator
    r = math.isqrt(n)
    lo = Fraction(r, 2 ** bits)
    hi = Fraction(r + 1, 2 ** bits)
    # guard against the floor in n: (r+1)^2 > n >= floor(x*scale), ensure hi^2 >= x
    while hi * hi < x:
        hi += Fraction(1, 2 ** bits)
    while lo * lo > x:
        lo -= Fraction(1, 2 ** bits)
    return Interval(lo, hi)
