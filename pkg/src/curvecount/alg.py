"""Exact sign and zero tests at isolated real algebraic numbers.

An algebraic number is (squarefree integer polynomial, isolating interval).
Zero tests go through gcds (algebraic, no precision), sign tests through
exact rational interval refinement, which terminates precisely because the
zero case was excluded first.
"""
from __future__ import annotations

from typing import List, Optional

from .errors import PrecisionExhausted
from .qq import QQ, Rat, RatInterval, rat
from .unipoly import (
    IsolInterval,
    UniPoly,
    _bisect_once,
    sturm_chain,
    sturm_count,
    zz_gcd,
    zz_gcd_certainly_trivial,
    zz_sign_at,
    zz_sign_on_interval,
)
from .qq import denom, numer


class AlgebraicNumber:
    """A real root of a squarefree integer polynomial, isolated exactly."""

    __slots__ = ("poly", "interval", "_chain")

    def __init__(self, poly: List, interval: IsolInterval):
        self.poly = list(poly)
        self.interval = interval
        self._chain = None

    @classmethod
    def from_rational(cls, x: Rat) -> "AlgebraicNumber":
        x = rat(x)
        p = [-numer(x), denom(x)]
        return cls(p, IsolInterval(x, x, 1))

    @property
    def is_rational(self) -> bool:
        return self.interval.is_exact

    def rational_value(self):
        if not self.is_rational:
            raise ValueError("not an exact rational")
        return self.interval.lower

    def refine_once(self) -> None:
        if self.interval.is_exact:
            return
        lo, hi = _bisect_once(self.poly, self.interval.lower, self.interval.upper)
        self.interval = IsolInterval(lo, hi, self.interval.multiplicity, factor=self.poly)

    def is_root_of(self, p: UniPoly) -> bool:
        """Exact zero test p(alpha) == 0."""
        if p.is_zero:
            return True
        if self.is_rational:
            return p(self.rational_value()) == 0
        pint = p.primitive_int()
        if zz_gcd_certainly_trivial(self.poly, pint):
            return False
        g = zz_gcd(self.poly, pint)
        if len(g) <= 1:
            return False
        chain = sturm_chain(g)
        return sturm_count(chain, self.interval.lower, self.interval.upper) == 1

    def sign_of(self, p: UniPoly, max_steps: int = 4096) -> int:
        """Exact sign of p(alpha): integer intervals decide, gcd rules out zero."""
        if p.is_zero:
            return 0
        if self.is_rational:
            v = p(self.rational_value())
            return 1 if v > 0 else (-1 if v < 0 else 0)
        pint = p.primitive_int()
        corr = 1 if p.lc > 0 else -1
        zero_checked = False
        for step in range(max_steps):
            s = zz_sign_on_interval(pint, *self._int_interval())
            if s != 0:
                return s * corr
            if not zero_checked and step >= 2:
                zero_checked = True
                if self.is_root_of(p):
                    return 0
            self.refine_once()
            if self.interval.is_exact:
                v = p(self.interval.lower)
                return 1 if v > 0 else (-1 if v < 0 else 0)
        raise PrecisionExhausted("sign_of hit the refinement cap")

    def _int_interval(self):
        lo, hi = self.interval.lower, self.interval.upper
        d1, d2 = denom(lo), denom(hi)
        import math

        q = d1 // math.gcd(d1, d2) * d2
        return numer(lo) * (q // d1), numer(hi) * (q // d2), q

    def enclosure(self) -> RatInterval:
        return self.interval.as_rat_interval()

    def enclose_value(self, p: UniPoly, width: Rat, max_steps: int = 4096) -> RatInterval:
        """Interval around p(alpha) of width <= width."""
        width = rat(width)
        for _ in range(max_steps):
            out = p.eval_interval(self.enclosure())
            if out.width <= width or self.interval.is_exact:
                return out
            self.refine_once()
        raise PrecisionExhausted("enclose_value hit the refinement cap")


class RatFunc:
    """Rational function in one variable; only ring/field ops and signs."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: Optional[UniPoly] = None):
        if den is None:
            den = UniPoly.constant(1, num.var)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, c: Rat, var: str = "t") -> "RatFunc":
        return cls(UniPoly.constant(c, var))

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other)
        return RatFunc.constant(other, self.num.var or self.den.var)

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def sign_at(self, alpha: AlgebraicNumber) -> int:
        sd = alpha.sign_of(self.den)
        if sd == 0:
            raise ZeroDivisionError("denominator vanishes at the algebraic point")
        return alpha.sign_of(self.num) * sd

    def is_zero_at(self, alpha: AlgebraicNumber) -> bool:
        if alpha.sign_of(self.den) == 0:
            raise ZeroDivisionError("denominator vanishes at the algebraic point")
        return alpha.is_root_of(self.num)

    def enclose_at(self, alpha: AlgebraicNumber, width: Rat) -> RatInterval:
        width = rat(width)
        for _ in range(4096):
            den_iv = self.den.eval_interval(alpha.enclosure())
            if den_iv.sign() == 0:
                alpha.refine_once()
                continue
            out = self.num.eval_interval(alpha.enclosure()) / den_iv
            if out.width <= width or alpha.interval.is_exact:
                return out
            alpha.refine_once()
        raise PrecisionExhausted("enclose_at hit the refinement cap")


class ExactScalarContext:
    """Sign/zero context for plain rational values (shared cascade code)."""

    @staticmethod
    def sign(v: Rat) -> int:
        v = rat(v)
        return 1 if v > 0 else (-1 if v < 0 else 0)

    @staticmethod
    def is_zero(v: Rat) -> bool:
        return rat(v) == 0


class AlgebraicContext:
    """Sign/zero context for RatFunc values at one algebraic number."""

    def __init__(self, alpha: AlgebraicNumber):
        self.alpha = alpha

    def sign(self, v) -> int:
        if isinstance(v, RatFunc):
            return v.sign_at(self.alpha)
        return ExactScalarContext.sign(v)

    def is_zero(self, v) -> bool:
        if isinstance(v, RatFunc):
            return v.is_zero_at(self.alpha)
        return ExactScalarContext.is_zero(v)
