"""Exact rational scalars.

The whole package computes over arbitrary-precision rationals; nothing here
ever rounds.  gmpy2 supplies fast mpq/mpz when present, with a pure-Python
Fraction fallback so the package stays importable without it.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

try:
    from gmpy2 import mpq as QQ, mpz as ZZ  # type: ignore

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    QQ = Fraction
    ZZ = int
    HAVE_GMPY2 = False

Rat = Union["QQ", Fraction, int]  # anything accepted where a rational is expected

RAT_ZERO = QQ(0)
RAT_ONE = QQ(1)


def rat(x) -> "QQ":
    """Coerce ints, Fractions, strings like '3/4' or '-2' into the scalar type.

    Floats are rejected: exactness is an invariant, not a preference.
    """
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a rational or a string")
    if isinstance(x, str):
        return QQ(x.strip())
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


def rat_str(x: Rat) -> str:
    """Render as 'p' or 'p/q' with positive q, the wire format everywhere."""
    q = rat(x)
    return str(q)


def numer(x: Rat) -> int:
    return int(rat(x).numerator)


def denom(x: Rat) -> int:
    return int(rat(x).denominator)


def sign(x: Rat) -> int:
    q = rat(x)
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


def as_fraction(x: Rat) -> Fraction:
    q = rat(x)
    return Fraction(int(q.numerator), int(q.denominator))


def best_rational_in(lo: Rat, hi: Rat, max_den: int):
    """Cheapest-denominator rational in [lo, hi], or None past max_den.

    Used to sniff exact rational roots out of tight isolating intervals.
    """
    lo_f, hi_f = as_fraction(lo), as_fraction(hi)
    if lo_f > hi_f:
        lo_f, hi_f = hi_f, lo_f
    mid = (lo_f + hi_f) / 2
    cand = mid.limit_denominator(max_den)
    if lo_f <= cand <= hi_f:
        return rat(cand)
    return None


class RatInterval:
    """Closed interval with exact rational endpoints.

    Supports the ring operations needed for certified sign evaluation of
    polynomials at isolated algebraic numbers.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Rat, hi: Rat = None):
        lo = rat(lo)
        hi = lo if hi is None else rat(hi)
        if lo > hi:
            lo, hi = hi, lo
        self.lo = lo
        self.hi = hi

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"

    @property
    def width(self):
        return self.hi - self.lo

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, x: Rat) -> bool:
        x = rat(x)
        return self.lo <= x <= self.hi

    def sign(self) -> int:
        """Certified sign: +1/-1 if zero excluded, 0 if undecided."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def __add__(self, other):
        o = other if isinstance(other, RatInterval) else RatInterval(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = other if isinstance(other, RatInterval) else RatInterval(other)
        return RatInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return RatInterval(other) - self

    def __mul__(self, other):
        o = other if isinstance(other, RatInterval) else RatInterval(other)
        cands = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(cands), max(cands))

    __rmul__ = __mul__

    def inverse(self):
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / rat(self.hi), 1 / rat(self.lo))

    def __truediv__(self, other):
        o = other if isinstance(other, RatInterval) else RatInterval(other)
        return self * o.inverse()

    def intersects(self, other: "RatInterval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def midpoint(self):
        return (self.lo + self.hi) / 2
