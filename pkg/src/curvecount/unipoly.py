"""Dense univariate polynomials with exact rational coefficients.

Coefficient lists run lowest degree first.  The heavy inner loops (pseudo
division, subresultant PRS, Sturm chains) work on primitive integer
coefficient lists; the public UniPoly wrapper carries rationals and a
variable tag.  No floating point anywhere in this module.
"""
from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import PrecisionExhausted, ZeroInput
from .qq import QQ, ZZ, Rat, RatInterval, best_rational_in, denom, numer, rat, sign

# ---------------------------------------------------------------------------
# integer coefficient list primitives (low degree first, no trailing zeros)
# ---------------------------------------------------------------------------


def zz_trim(c: List) -> List:
    while c and c[-1] == 0:
        c.pop()
    return c


def zz_deg(c: Sequence) -> int:
    return len(c) - 1


def zz_content(c: Sequence) -> int:
    g = ZZ(0)
    for a in c:
        g = math.gcd(int(g), int(a))
        if g == 1:
            return 1
    return int(g)


def zz_primitive(c: Sequence) -> List:
    if not c:
        return []
    g = zz_content(c)
    if g == 0:
        return []
    if c[-1] < 0:
        g = -g
    return [ZZ(int(a) // g) for a in c]


def zz_neg(c: Sequence) -> List:
    return [-a for a in c]


def zz_add(a: Sequence, b: Sequence) -> List:
    n = max(len(a), len(b))
    out = [ZZ(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return zz_trim(out)


def zz_mul(a: Sequence, b: Sequence) -> List:
    if not a or not b:
        return []
    out = [ZZ(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return zz_trim(out)


def zz_scale(a: Sequence, c) -> List:
    if c == 0:
        return []
    return [x * c for x in a]


def zz_derivative(a: Sequence) -> List:
    return zz_trim([a[i] * i for i in range(1, len(a))])


def zz_prem(a: Sequence, b: Sequence) -> List:
    """Pseudo-remainder: lc(b)^(da-db+1) * a mod b, divisionless."""
    a = list(a)
    da, db = zz_deg(a), zz_deg(b)
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    if da < db:
        return zz_trim(a)
    lb = b[-1]
    for k in range(da - db, -1, -1):
        # a <- lb*a - a[k+db] * x^k * b
        head = a[k + db]
        for i in range(len(a)):
            a[i] = lb * a[i]
        for i in range(db + 1):
            a[k + i] -= head * b[i]
        a[k + db] = ZZ(0)
    return zz_trim(a[:db] if db > 0 else [])


def zz_sign_at(c: Sequence, p: int, q: int) -> int:
    """Sign of c(p/q) with q > 0, via the homogenized integer value."""
    acc = zz_eval_hom(c, p, q)
    if acc > 0:
        return 1
    if acc < 0:
        return -1
    return 0


def zz_eval_hom(c: Sequence, p: int, q: int):
    """c(p/q) * q^deg(c) as an exact integer (q > 0)."""
    if not c:
        return ZZ(0)
    n = len(c) - 1
    acc = ZZ(c[n])
    qpow = ZZ(1)
    for i in range(n - 1, -1, -1):
        qpow *= q
        acc = acc * p + c[i] * qpow
    return acc


def zz_gcd(a: Sequence, b: Sequence) -> List:
    """Primitive gcd via the subresultant pseudo-remainder sequence.

    Coefficient growth is controlled by the exact subresultant divisors, so
    content is only extracted once at the end.
    """
    a = zz_primitive(list(a))
    b = zz_primitive(list(b))
    if not a:
        return b
    if not b:
        return a
    if zz_deg(a) < zz_deg(b):
        a, b = b, a
    if zz_deg(b) == 0:
        return [ZZ(1)]
    g = ZZ(1)
    h = ZZ(1)
    while True:
        delta = zz_deg(a) - zz_deg(b)
        r = zz_prem(a, b)
        if not r:
            return zz_primitive(b)
        if zz_deg(r) == 0:
            return [ZZ(1)]
        div = g * h ** delta
        a, b = b, [x // div for x in r]
        g = a[-1]
        if delta >= 1:
            h = g ** delta // h ** (delta - 1)


_FILTER_PRIMES = (2305843009213693951, 4611686018427387847, 9223372036854775783)


def _gcd_degree_mod_p(a: List[int], b: List[int], p: int) -> int:
    """Degree of gcd(a mod p, b mod p); inputs as trimmed int lists."""

    def trim(c):
        while c and c[-1] % p == 0:
            c.pop()
        return c

    fa = trim([c % p for c in a])
    fb = trim([c % p for c in b])
    while fb:
        if len(fa) < len(fb):
            fa, fb = fb, fa
        inv = pow(fb[-1], -1, p)
        while len(fa) >= len(fb):
            factor = fa[-1] * inv % p
            shift = len(fa) - len(fb)
            for i in range(len(fb)):
                fa[shift + i] = (fa[shift + i] - factor * fb[i]) % p
            fa.pop()
            fa = trim(fa)
            if not fa:
                break
        fa, fb = fb, fa
    return len(fa) - 1 if fa else -1


def zz_gcd_certainly_trivial(a: Sequence, b: Sequence) -> bool:
    """True certifies gcd(a, b) is constant; False means unknown.

    The reduction of the true gcd divides the mod-p gcd whenever neither
    leading coefficient vanishes mod p, so a degree-0 mod-p gcd is a proof.
    """
    if not a or not b:
        return False
    ia = [int(c) for c in a]
    ib = [int(c) for c in b]
    for p in _FILTER_PRIMES:
        if ia[-1] % p == 0 or ib[-1] % p == 0:
            continue
        if _gcd_degree_mod_p(ia, ib, p) == 0:
            return True
    return False


def zz_divexact(a: Sequence, b: Sequence) -> List:
    """Exact division in Z[x]; raises if the division is not exact."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    a = list(a)
    db = zz_deg(b)
    dq = zz_deg(a) - db
    if dq < 0:
        raise ValueError("inexact polynomial division")
    q = [ZZ(0)] * (dq + 1)
    lb = b[-1]
    for k in range(dq, -1, -1):
        num = a[k + db]
        if num % lb != 0:
            raise ValueError("inexact polynomial division")
        t = num // lb
        q[k] = ZZ(t)
        if t:
            for i in range(db + 1):
                a[k + i] -= t * b[i]
    if any(x != 0 for x in a):
        raise ValueError("inexact polynomial division")
    return zz_trim(q)


def zz_resultant(a: Sequence, b: Sequence):
    """Resultant over Z by the subresultant PRS (Cohen Alg. 3.3.7)."""
    a = zz_trim([ZZ(int(x)) for x in a])
    b = zz_trim([ZZ(int(x)) for x in b])
    if not a or not b:
        return ZZ(0)
    if zz_deg(a) == 0 and zz_deg(b) == 0:
        return ZZ(1)
    s = 1
    if zz_deg(a) < zz_deg(b):
        if (zz_deg(a) % 2 == 1) and (zz_deg(b) % 2 == 1):
            s = -s
        a, b = b, a
    if zz_deg(b) == 0:
        return s * b[0] ** zz_deg(a)
    ca, cb = zz_content(a), zz_content(b)
    A = [x // ca for x in a]
    B = [x // cb for x in b]
    t = ZZ(ca) ** zz_deg(b) * ZZ(cb) ** zz_deg(a)
    g = ZZ(1)
    h = ZZ(1)
    while True:
        da, db = zz_deg(A), zz_deg(B)
        delta = da - db
        if (da % 2 == 1) and (db % 2 == 1):
            s = -s
        R = zz_prem(A, B)
        A = B
        div = g * h ** delta
        B = [x // div for x in R] if R else []
        g = A[-1]
        if delta == 0:
            h = h  # unchanged: h^(1-0)*g^0
        else:
            h = g ** delta // h ** (delta - 1)
        if not B:
            return ZZ(0)
        if zz_deg(B) == 0:
            break
    da = zz_deg(A)
    h = B[0] ** da // h ** (da - 1) if da >= 1 else h
    return s * t * h


def zz_sylvester_resultant(a: Sequence, b: Sequence):
    """Resultant as a Bareiss determinant of the Sylvester matrix.

    Independent of the PRS route; used as the cross-check oracle.
    """
    a = zz_trim([ZZ(int(x)) for x in a])
    b = zz_trim([ZZ(int(x)) for x in b])
    if not a or not b:
        return ZZ(0)
    m, n = zz_deg(a), zz_deg(b)
    if m == 0 and n == 0:
        return ZZ(1)
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    ra = list(reversed(a))  # high -> low
    rb = list(reversed(b))
    for i in range(n):
        rows.append([ZZ(0)] * i + ra + [ZZ(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ZZ(0)] * i + rb + [ZZ(0)] * (size - n - 1 - i))
    return _bareiss_det(rows)


def _bareiss_det(m: List[List]):
    n = len(m)
    if n == 0:
        return ZZ(1)
    m = [row[:] for row in m]
    sign_acc = 1
    prev = ZZ(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign_acc = -sign_acc
                    break
            else:
                return ZZ(0)
        pk = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            hik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - hik * row_k[j]) // prev
            row_i[k] = ZZ(0)
        prev = pk
    return sign_acc * m[-1][-1]


# ---------------------------------------------------------------------------
# Sturm machinery on primitive integer lists
# ---------------------------------------------------------------------------


def sturm_chain(p: Sequence) -> List[List]:
    """Sturm chain of a squarefree primitive integer polynomial.

    Pseudo-remainders are rescaled by positive factors only, so the sign
    pattern agrees with the classical chain.
    """
    chain = [zz_trim(list(p))]
    d = zz_derivative(p)
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = zz_prem(a, b)
        if not r:
            break
        # prem scales by lc(b)^(da-db+1); flip sign when that factor is negative
        if b[-1] < 0 and (zz_deg(a) - zz_deg(b) + 1) % 2 == 1:
            r = zz_neg(r)
        r = zz_neg(r)
        g = zz_content(r)
        chain.append([x // g for x in r])
    return chain


def _variations(signs: Iterable[int]) -> int:
    v = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def sturm_variations_at(chain: Sequence[Sequence], p: int, q: int) -> int:
    return _variations(zz_sign_at(c, p, q) for c in chain)


def sturm_variations_at_inf(chain: Sequence[Sequence], positive: bool) -> int:
    sgns = []
    for c in chain:
        if not c:
            sgns.append(0)
            continue
        s = 1 if c[-1] > 0 else -1
        if not positive and zz_deg(c) % 2 == 1:
            s = -s
        sgns.append(s)
    return _variations(sgns)


def sturm_count(chain, a: Rat, b: Rat) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    va = sturm_variations_at(chain, numer(a), denom(a))
    vb = sturm_variations_at(chain, numer(b), denom(b))
    return va - vb


def zz_root_bound(p: Sequence) -> int:
    """Cauchy bound rounded up to a power of two (all roots inside (-B, B))."""
    if zz_deg(p) < 1:
        return 1
    lead = abs(int(p[-1]))
    mx = max(abs(int(c)) for c in p[:-1]) if len(p) > 1 else 0
    bound = 1 + (mx + lead - 1) // lead
    b = 1
    while b < bound + 1:
        b <<= 1
    return b


class IsolInterval:
    """Isolating interval for one distinct real root.

    lower == upper marks an exact rational root.  `factor` is the squarefree
    integer factor the root belongs to; refinement bisects against it so the
    isolated root never changes.
    """

    __slots__ = ("lower", "upper", "multiplicity", "factor")

    def __init__(self, lower: Rat, upper: Rat, multiplicity: int = 1, factor=None):
        self.lower = rat(lower)
        self.upper = rat(upper)
        if self.lower > self.upper:
            raise ValueError("interval endpoints out of order")
        self.multiplicity = multiplicity
        self.factor = factor

    def __repr__(self):
        return f"IsolInterval([{self.lower}, {self.upper}], mult={self.multiplicity})"

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    @property
    def width(self):
        return self.upper - self.lower

    def midpoint(self):
        return (self.lower + self.upper) / 2

    def as_rat_interval(self) -> RatInterval:
        return RatInterval(self.lower, self.upper)

    def contains(self, x: Rat) -> bool:
        return self.lower <= rat(x) <= self.upper


def _isolate_squarefree(p: List, lo: Rat, hi: Rat) -> List[Tuple[Rat, Rat]]:
    """Disjoint open isolating intervals (or exact points) in (lo, hi)."""
    chain = sturm_chain(p)
    out: List[Tuple[Rat, Rat]] = []

    def rec(a: Rat, b: Rat, count: int):
        if count == 0:
            return
        if count == 1:
            out.append((a, b))
            return
        m = (a + b) / 2
        if zz_sign_at(p, numer(m), denom(m)) == 0:
            out.append((m, m))
            # peel an exact separation band around m
            delta = (b - a) / 4
            while True:
                l, r = m - delta, m + delta
                if (
                    zz_sign_at(p, numer(l), denom(l)) != 0
                    and zz_sign_at(p, numer(r), denom(r)) != 0
                    and sturm_count(chain, l, r) == 1
                ):
                    break
                delta = delta / 2
            rec(a, l, sturm_count(chain, a, l))
            rec(r, b, sturm_count(chain, r, b))
        else:
            rec(a, m, sturm_count(chain, a, m))
            rec(m, b, sturm_count(chain, m, b))

    rec(rat(lo), rat(hi), sturm_count(chain, lo, hi))
    out.sort(key=lambda ab: (ab[0], ab[1]))
    return out


def _bisect_once(p: List, lo: Rat, hi: Rat) -> Tuple[Rat, Rat]:
    """One bisection step on an interval with a strict sign change of p."""
    m = (lo + hi) / 2
    sm = zz_sign_at(p, numer(m), denom(m))
    if sm == 0:
        return m, m
    if sm == zz_sign_at(p, numer(lo), denom(lo)):
        return m, hi
    return lo, m


# ---------------------------------------------------------------------------
# public rational-coefficient polynomial
# ---------------------------------------------------------------------------


class UniPoly:
    """Immutable dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs", "var", "_pint")

    def __init__(self, coeffs: Iterable[Rat], var: str = "t"):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var
        self._pint = None

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, var: str = "t") -> "UniPoly":
        return cls((), var)

    @classmethod
    def constant(cls, c: Rat, var: str = "t") -> "UniPoly":
        return cls((rat(c),), var)

    @classmethod
    def x(cls, var: str = "t") -> "UniPoly":
        return cls((0, 1), var)

    @classmethod
    def from_roots(cls, roots: Iterable[Rat], var: str = "t") -> "UniPoly":
        p = cls.constant(1, var)
        for r in roots:
            p = p * cls((-rat(r), 1), var)
        return p

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if self.is_zero:
            raise ZeroInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*{self.var}")
            else:
                terms.append(f"{c}*{self.var}^{i}")
        return "UniPoly(" + " + ".join(terms) + ")"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = other if isinstance(other, UniPoly) else UniPoly.constant(other, self.var)
        n = max(len(self.coeffs), len(o.coeffs))
        out = [QQ(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(o.coeffs):
            out[i] += c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = other if isinstance(other, UniPoly) else UniPoly.constant(other, self.var)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = rat(other)
            return UniPoly([c * a for a in self.coeffs], self.var)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(self.var)
        out = [QQ(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [QQ(0)] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        lb = other.lc
        db = other.degree
        while len(r) - 1 >= db and any(c != 0 for c in r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < db:
                break
            k = len(r) - 1 - db
            t = r[-1] / lb
            q[k] = t
            for i in range(db + 1):
                r[k + i] -= t * other.coeffs[i]
            r.pop()
        return UniPoly(q, self.var), UniPoly(r, self.var)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return q

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    # -- evaluation / transforms ----------------------------------------------

    def __call__(self, x):
        if isinstance(x, RatInterval):
            return self.eval_interval(x)
        x = rat(x)
        acc = QQ(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, iv: RatInterval) -> RatInterval:
        acc = RatInterval(0)
        for c in reversed(self.coeffs):
            acc = acc * iv + RatInterval(c)
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))], self.var
        )

    def compose_linear(self, a: Rat, b: Rat) -> "UniPoly":
        """p(a + b*x)."""
        shift = UniPoly([rat(a), rat(b)], self.var)
        acc = UniPoly.zero(self.var)
        for c in reversed(self.coeffs):
            acc = acc * shift + UniPoly.constant(c, self.var)
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly.zero(self.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly.constant(c, self.var)
        return acc

    # -- integer views ---------------------------------------------------------

    def primitive_int(self) -> List:
        """Primitive integer coefficient list sharing this polynomial's roots."""
        if self.is_zero:
            return []
        if self._pint is None:
            den = ZZ(1)
            for c in self.coeffs:
                den = den * denom(c) // math.gcd(int(den), denom(c))
            ints = [ZZ(numer(c)) * (int(den) // denom(c)) for c in self.coeffs]
            self._pint = zz_primitive(ints)
        return self._pint

    @classmethod
    def from_int_coeffs(cls, coeffs: Sequence, var: str = "t") -> "UniPoly":
        return cls([QQ(int(c)) for c in coeffs], var)


# ---------------------------------------------------------------------------
# gcd / squarefree / resultant / discriminant over Q
# ---------------------------------------------------------------------------


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Primitive gcd (positive leading coefficient) over Q."""
    g = zz_gcd(p.primitive_int(), q.primitive_int())
    return UniPoly.from_int_coeffs(g, p.var or q.var)


def squarefree_decomposition(p: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Yun's algorithm: [(factor_i, multiplicity_i)], factors primitive, coprime."""
    if p.is_zero:
        raise ZeroInput("squarefree decomposition of zero")
    if p.degree == 0:
        return []
    var = p.var
    f = UniPoly.from_int_coeffs(p.primitive_int(), var)
    df = f.derivative()
    a = UniPoly.from_int_coeffs(zz_gcd(f.primitive_int(), df.primitive_int()), var)
    b = f // a
    c = df // a
    d = c - b.derivative()
    out: List[Tuple[UniPoly, int]] = []
    i = 1
    while b.degree > 0:
        a = UniPoly.from_int_coeffs(zz_gcd(b.primitive_int(), d.primitive_int()), var)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    parts = squarefree_decomposition(p)
    acc = UniPoly.constant(1, p.var)
    for f, _ in parts:
        acc = acc * f
    return acc


def resultant(p: UniPoly, q: UniPoly):
    """Sylvester resultant over Q, exact."""
    if p.is_zero or q.is_zero:
        raise ZeroInput("resultant of a zero polynomial")
    pi, qi = p.primitive_int(), q.primitive_int()
    r = zz_resultant(pi, qi)
    # correct for the primitive rescaling: res(ap, bq) = a^deg q b^deg p res(p, q)
    sp = p.lc / QQ(int(pi[-1]))
    sq = q.lc / QQ(int(qi[-1]))
    return QQ(int(r)) * sp ** q.degree * sq ** p.degree


def discriminant(p: UniPoly):
    """disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p)."""
    if p.is_zero:
        raise ZeroInput("discriminant of zero")
    n = p.degree
    if n < 1:
        raise ZeroInput("discriminant needs degree >= 1")
    if n == 1:
        return QQ(1)
    r = resultant(p, p.derivative())
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * r / p.lc


# ---------------------------------------------------------------------------
# real root isolation (squarefree decomposition + Sturm, exact throughout)
# ---------------------------------------------------------------------------


def isolate_real_roots(
    p: UniPoly, lo: Optional[Rat] = None, hi: Optional[Rat] = None
) -> List[IsolInterval]:
    """Disjoint isolating intervals for the distinct real roots of p.

    Multiplicities come from the squarefree decomposition.  With lo/hi the
    search is restricted to (lo, hi); endpoints must not be roots then.
    """
    if p.is_zero:
        raise ZeroInput("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    ivs: List[IsolInterval] = []
    for factor, mult in squarefree_decomposition(p):
        f = factor.primitive_int()
        bound = zz_root_bound(f)
        a = rat(lo) if lo is not None else rat(-bound)
        b = rat(hi) if hi is not None else rat(bound)
        if lo is not None and zz_sign_at(f, numer(a), denom(a)) == 0:
            raise ValueError("isolation window endpoint is a root")
        if hi is not None and zz_sign_at(f, numer(b), denom(b)) == 0:
            raise ValueError("isolation window endpoint is a root")
        for (x0, x1) in _isolate_squarefree(f, a, b):
            ivs.append(IsolInterval(x0, x1, mult, factor=f))
    # shrink until intervals from different factors are pairwise disjoint
    changed = True
    while changed:
        changed = False
        ivs.sort(key=lambda iv: (iv.lower, iv.upper))
        for i in range(len(ivs) - 1):
            a, b = ivs[i], ivs[i + 1]
            if a.upper >= b.lower and not (a.is_exact and b.is_exact):
                ivs[i] = _shrink(a)
                ivs[i + 1] = _shrink(b)
                changed = True
    return ivs


def _shrink(iv: IsolInterval) -> IsolInterval:
    if iv.is_exact:
        return iv
    lo, hi = _bisect_once(iv.factor, iv.lower, iv.upper)
    return IsolInterval(lo, hi, iv.multiplicity, factor=iv.factor)


def refine(iv: IsolInterval, p: UniPoly, width: Rat, max_steps: int = 100000) -> IsolInterval:
    """Bisect until the interval is narrower than `width`.

    The isolated root never changes: bisection happens on the squarefree
    factor the root belongs to, whose endpoint signs certify containment.
    """
    width = rat(width)
    if iv.is_exact:
        return iv
    factor = iv.factor
    if factor is None:
        for f, _ in squarefree_decomposition(p):
            fi = f.primitive_int()
            sl = zz_sign_at(fi, numer(iv.lower), denom(iv.lower))
            sr = zz_sign_at(fi, numer(iv.upper), denom(iv.upper))
            if sl * sr < 0 or sl == 0 or sr == 0:
                factor = fi
                break
        if factor is None:
            raise ValueError("interval does not isolate a root of p")
    lo, hi = iv.lower, iv.upper
    steps = 0
    while hi - lo > width:
        lo, hi = _bisect_once(factor, lo, hi)
        if lo == hi:
            break
        steps += 1
        if steps > max_steps:
            raise PrecisionExhausted("refinement exceeded the step cap")
    return IsolInterval(lo, hi, iv.multiplicity, factor=factor)


def count_real_roots_with_multiplicity(p: UniPoly) -> int:
    return sum(iv.multiplicity for iv in isolate_real_roots(p))


def rational_roots(p: UniPoly, max_den: int = 1 << 24) -> List[Tuple[Rat, int]]:
    """Exact rational roots (value, multiplicity) with denominator <= max_den.

    Tight isolating intervals are sniffed with continued fractions and every
    candidate is verified by exact evaluation, so no false positives.
    """
    out = []
    for iv in isolate_real_roots(p):
        if iv.is_exact:
            out.append((iv.lower, iv.multiplicity))
            continue
        # width below 1/(2 max_den^2) makes the best approximation unique
        tight = refine(iv, p, QQ(1, 2 * max_den * max_den))
        if tight.is_exact:
            out.append((tight.lower, tight.multiplicity))
            continue
        cand = best_rational_in(tight.lower, tight.upper, max_den)
        if cand is not None and p(cand) == 0:
            out.append((cand, iv.multiplicity))
    return out


# ---------------------------------------------------------------------------
# interpolation
# ---------------------------------------------------------------------------


def lagrange_interpolate(points: Sequence[Tuple[Rat, Rat]], var: str = "t") -> UniPoly:
    """Unique polynomial of degree < len(points) through the given points."""
    xs = [rat(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    acc = UniPoly.zero(var)
    for i, (xi, yi) in enumerate(points):
        yi = rat(yi)
        if yi == 0:
            continue
        num = UniPoly.constant(1, var)
        den = QQ(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * UniPoly([-rat(xj), 1], var)
            den = den * (rat(xi) - rat(xj))
        acc = acc + num * (yi / den)
    return acc


# ---------------------------------------------------------------------------
# generic polynomials over a coefficient ring (for resultants in towers)
# ---------------------------------------------------------------------------
#
# Elements must support +, -, *, == 0 comparison via `is_zero_fn`, and exact
# division via `divexact_fn`; UniPoly and BiPoly both qualify.


def ring_prem(a: List, b: List, mul, sub, is_zero) -> List:
    """Pseudo-remainder over an arbitrary commutative ring."""

    def trim(c):
        while c and is_zero(c[-1]):
            c.pop()
        return c

    a = trim(list(a))
    b = trim(list(b))
    da, db = len(a) - 1, len(b) - 1
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if da < db:
        return a
    lb = b[-1]
    for k in range(da - db, -1, -1):
        head = a[k + db]
        a = [mul(lb, c) for c in a]
        for i in range(db + 1):
            a[k + i] = sub(a[k + i], mul(head, b[i]))
    return trim(a[: db if db > 0 else 0])


def ring_subresultant_prs(a: List, b: List, ring) -> List[List]:
    """Subresultant PRS over an integral domain.

    `ring` provides one/mul/sub/divexact/is_zero.  The chain starts with the
    inputs; consecutive-degree bookkeeping follows the classical algorithm, so
    every element stays in the ring (all divisions exact).
    """
    one = ring["one"]
    mul, sub, divexact, is_zero = (
        ring["mul"],
        ring["sub"],
        ring["divexact"],
        ring["is_zero"],
    )

    def trim(c):
        c = list(c)
        while c and is_zero(c[-1]):
            c.pop()
        return c

    A, B = trim(a), trim(b)
    if not A or not B:
        return [x for x in (A, B) if x]
    if len(A) < len(B):
        A, B = B, A
    chain = [A, B]
    g, h = one, one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        R = ring_prem(A, B, mul, sub, is_zero)
        if not R:
            break
        hd = h
        for _ in range(delta - 1):
            hd = mul(hd, h)
        div = mul(g, hd) if delta >= 1 else g
        R = [divexact(c, div) for c in R]
        chain.append(R)
        A, B = B, R
        g = A[-1]
        if delta >= 1:
            num = g
            for _ in range(delta - 1):
                num = mul(num, g)
            den = one
            for _ in range(delta - 1):
                den = mul(den, h)
            h = divexact(num, den)
        if len(B) - 1 <= 0:
            break
    return chain


def zz_sign_on_interval(c: Sequence, p1: int, p2: int, q: int) -> int:
    """Certified sign of c on [p1/q, p2/q]: +-1 when zero is excluded, else 0.

    Pure integer interval Horner (no rational normalization), which is what
    makes refinement loops at algebraic numbers cheap.
    """
    if not c:
        return 0
    n = len(c) - 1
    lo = hi = ZZ(int(c[n]))
    qpow = ZZ(1)
    for i in range(n - 1, -1, -1):
        qpow *= q
        cands = (lo * p1, lo * p2, hi * p1, hi * p2)
        base = ZZ(int(c[i])) * qpow
        lo = min(cands) + base
        hi = max(cands) + base
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return 0


def zz_eval_interval(c: Sequence, p1: int, p2: int, q: int) -> Tuple:
    """Integer interval enclosure of c on [p1/q, p2/q], scaled by q^deg(c)."""
    if not c:
        return ZZ(0), ZZ(0)
    n = len(c) - 1
    lo = hi = ZZ(int(c[n]))
    qpow = ZZ(1)
    for i in range(n - 1, -1, -1):
        qpow *= q
        cands = (lo * p1, lo * p2, hi * p1, hi * p2)
        base = ZZ(int(c[i])) * qpow
        lo = min(cands) + base
        hi = max(cands) + base
    return lo, hi


def ii_mul(a: Tuple, b: Tuple) -> Tuple:
    """Product of integer intervals."""
    cands = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(cands), max(cands)


def ii_pow(a: Tuple, e: int) -> Tuple:
    out = (ZZ(1), ZZ(1))
    for _ in range(e):
        out = ii_mul(out, a)
    return out
