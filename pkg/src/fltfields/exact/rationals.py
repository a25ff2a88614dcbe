"""Exact rational scalars and intervals.

`QQ` is the rational constructor used everywhere in the package.  It is
gmpy2's mpq when available (noticeably faster in lattice reduction and
enumeration hot loops) and the stdlib Fraction otherwise; both expose
`.numerator` / `.denominator` and full arithmetic, which is all we rely on.
"""

from __future__ import annotations

from math import isqrt

try:  # pragma: no cover - exercised implicitly by the whole suite
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ


def qq_floor(x) -> int:
    n, d = x.numerator, x.denominator
    return n // d


def qq_ceil(x) -> int:
    n, d = x.numerator, x.denominator
    return -((-n) // d)


def sqrt_upper(x, scale: int = 10**8):
    """Rational upper bound for sqrt(x), x a nonnegative rational."""
    if x < 0:
        raise ValueError("sqrt of negative value")
    n, d = x.numerator, x.denominator
    # ceil(sqrt(n/d) * scale) / scale, computed in integers
    num = isqrt(n * d * scale * scale)
    if num * num < n * d * scale * scale:
        num += 1
    return QQ(num, d * scale)


def sqrt_lower(x, scale: int = 10**8):
    """Rational lower bound for sqrt(x), x a nonnegative rational."""
    if x < 0:
        raise ValueError("sqrt of negative value")
    n, d = x.numerator, x.denominator
    return QQ(isqrt(n * d * scale * scale), d * scale)


class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints.

    Used for real-root isolation and totally-positive certificates;
    refinement only ever shrinks an interval.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = QQ(lo), QQ(hi)
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: {lo} > {hi}")
        self.lo = lo
        self.hi = hi

    def width(self):
        return self.hi - self.lo

    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def sign(self) -> int | None:
        """Sign of every point of the interval, or None if 0 may lie inside."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def __add__(self, other):
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other):
        prods = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RationalInterval(min(prods), max(prods))

    def scale(self, c):
        c = QQ(c)
        if c >= 0:
            return RationalInterval(self.lo * c, self.hi * c)
        return RationalInterval(self.hi * c, self.lo * c)

    def shift(self, c):
        return RationalInterval(self.lo + c, self.hi + c)

    def __repr__(self):
        return f"RationalInterval({self.lo}, {self.hi})"

    def __eq__(self, other):
        return (
            isinstance(other, RationalInterval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self):
        return hash((self.lo, self.hi))
