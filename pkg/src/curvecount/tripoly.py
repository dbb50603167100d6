"""Homogeneous ternary forms and small sparse multivariate helpers.

TriPoly is the spec-level ternary form (exact, homogeneous, sparse).  MPoly
is a minimal generic sparse polynomial used for eliminations in charts; it
only needs ring operations, never division.
"""
from __future__ import annotations

import itertools
import math
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import ZeroInput
from .qq import QQ, ZZ, Rat, rat
from .unipoly import UniPoly

Monomial = Tuple[int, int, int]


def monomials_of_degree(d: int) -> List[Monomial]:
    """All (i, j, k) with i+j+k = d, lexicographic from x^d down to z^d."""
    out = []
    for i in range(d, -1, -1):
        for j in range(d - i, -1, -1):
            out.append((i, j, d - i - j))
    return out


class TriPoly:
    """Sparse homogeneous polynomial in (x : y : z) over Q."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Dict[Monomial, Rat]):
        self.degree = degree
        clean: Dict[Monomial, "QQ"] = {}
        for mono, c in terms.items():
            if sum(mono) != degree:
                raise ValueError(f"monomial {mono} not of degree {degree}")
            c = rat(c)
            if c != 0:
                clean[tuple(mono)] = c
        self.terms = clean

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_coeff_vector(cls, d: int, vec: Sequence[Rat]) -> "TriPoly":
        monos = monomials_of_degree(d)
        if len(vec) != len(monos):
            raise ValueError("coefficient vector length mismatch")
        return cls(d, dict(zip(monos, vec)))

    def coeff_vector(self) -> List:
        return [self.terms.get(m, QQ(0)) for m in monomials_of_degree(self.degree)]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self):
        if self.is_zero:
            return f"TriPoly(deg {self.degree}, 0)"
        bits = []
        for (i, j, k), c in sorted(self.terms.items(), reverse=True):
            mono = "".join(s * e for s, e in zip("xyz", (i, j, k)))
            bits.append(f"{c}*{mono}" if mono else f"{c}")
        return "TriPoly(" + " + ".join(bits) + ")"

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "TriPoly") -> "TriPoly":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, QQ(0)) + c
        return TriPoly(self.degree, terms)

    def __sub__(self, other: "TriPoly") -> "TriPoly":
        return self + other.scale(-1)

    def scale(self, c: Rat) -> "TriPoly":
        c = rat(c)
        return TriPoly(self.degree, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "TriPoly") -> "TriPoly":
        terms: Dict[Monomial, "QQ"] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                terms[m] = terms.get(m, QQ(0)) + c1 * c2
        return TriPoly(self.degree + other.degree, terms)

    # -- calculus / evaluation --------------------------------------------------

    def partial(self, axis: int) -> "TriPoly":
        terms: Dict[Monomial, "QQ"] = {}
        for m, c in self.terms.items():
            e = m[axis]
            if e == 0:
                continue
            m2 = list(m)
            m2[axis] = e - 1
            key = tuple(m2)
            terms[key] = terms.get(key, QQ(0)) + c * e
        return TriPoly(self.degree - 1, terms)

    def gradient(self) -> Tuple["TriPoly", "TriPoly", "TriPoly"]:
        return self.partial(0), self.partial(1), self.partial(2)

    def __call__(self, pt: Sequence[Rat]):
        x, y, z = (rat(v) for v in pt)
        acc = QQ(0)
        for (i, j, k), c in self.terms.items():
            acc += c * x ** i * y ** j * z ** k
        return acc

    def vanishes_at(self, pt: Sequence[Rat]) -> bool:
        return self(pt) == 0

    # -- coordinate changes -----------------------------------------------------

    def transform(self, mat: Sequence[Sequence[Rat]]) -> "TriPoly":
        """(F o A)(v) = F(A v) for a 3x3 rational matrix A."""
        rows = [[rat(v) for v in row] for row in mat]
        new_vars = []
        for axis in range(3):
            lin = TriPoly(1, {(1, 0, 0): rows[axis][0], (0, 1, 0): rows[axis][1], (0, 0, 1): rows[axis][2]})
            new_vars.append(lin)
        # substitute x -> column combos by expanding each monomial
        acc = TriPoly(self.degree, {})
        for (i, j, k), c in self.terms.items():
            term = TriPoly(0, {(0, 0, 0): c})
            for axis, e in enumerate((i, j, k)):
                for _ in range(e):
                    term = term * new_vars[axis]
            acc = acc + term
        return acc

    def restrict_to_line(self, p: Sequence[Rat], q: Sequence[Rat]) -> UniPoly:
        """F(u*p + q) as a polynomial in u (line through p and q).

        The full binary form is F(u*p + v*q); this is its v=1 chart.  The
        point p itself corresponds to u = infinity: F(p) scales the leading
        coefficient, which drops the degree exactly when F(p) = 0.
        """
        x = UniPoly([rat(q[0]), rat(p[0])], "u")
        y = UniPoly([rat(q[1]), rat(p[1])], "u")
        z = UniPoly([rat(q[2]), rat(p[2])], "u")
        acc = UniPoly.zero("u")
        for (i, j, k), c in self.terms.items():
            acc = acc + (x ** i) * (y ** j) * (z ** k) * c
        return acc

    def dehomogenize(self, chart: int) -> "MPoly":
        """Set coordinate `chart` to 1; returns an MPoly in the other two."""
        names = [n for a, n in enumerate(("x", "y", "z")) if a != chart]
        terms: Dict[Tuple[int, ...], "QQ"] = {}
        for m, c in self.terms.items():
            key = tuple(e for a, e in enumerate(m) if a != chart)
            terms[key] = terms.get(key, QQ(0)) + c
        return MPoly(tuple(names), terms)

    def content_cleared(self) -> "TriPoly":
        """Primitive integer rescaling (sign normalized to positive leading term)."""
        if self.is_zero:
            return self
        den = 1
        for c in self.terms.values():
            d = int(c.denominator)
            den = den // math.gcd(den, d) * d
        ints = {m: int(c.numerator) * (den // int(c.denominator)) for m, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        lead = ints[max(ints)]
        if lead < 0:
            g = -g
        return TriPoly(self.degree, {m: QQ(v // g) for m, v in ints.items()})


def tri_from_string_terms(d: int, coeffs: Dict[str, Rat] = None, **kw) -> TriPoly:
    """Convenience builder: tri_from_string_terms(3, y2z=1, x3=-1)."""
    merged: Dict[str, Rat] = dict(coeffs or {})
    merged.update(kw)
    terms: Dict[Monomial, Rat] = {}
    for key, c in merged.items():
        e = [0, 0, 0]
        i = 0
        while i < len(key):
            axis = "xyz".index(key[i])
            i += 1
            num = ""
            while i < len(key) and key[i].isdigit():
                num += key[i]
                i += 1
            e[axis] += int(num) if num else 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return TriPoly(d, terms)


# ---------------------------------------------------------------------------
# generic sparse polynomials (ring elements for chart eliminations)
# ---------------------------------------------------------------------------


class MPoly:
    """Sparse polynomial in named variables over Q; ring ops only."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Tuple[str, ...], terms: Dict[Tuple[int, ...], Rat]):
        self.vars = tuple(variables)
        clean = {}
        for k, c in terms.items():
            c = rat(c)
            if c != 0:
                clean[tuple(k)] = c
        self.terms = clean

    @classmethod
    def zero(cls, variables: Tuple[str, ...]) -> "MPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Tuple[str, ...], c: Rat) -> "MPoly":
        return cls(variables, {tuple([0] * len(variables)): rat(c)})

    @classmethod
    def var(cls, variables: Tuple[str, ...], name: str) -> "MPoly":
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): QQ(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(k[i] for k in self.terms)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __repr__(self):
        if self.is_zero:
            return "MPoly(0)"
        bits = []
        for k, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(self.vars, k) if e
            )
            bits.append(f"{c}*{mono}" if mono else f"{c}")
        return "MPoly(" + " + ".join(bits) + ")"

    def __add__(self, other):
        o = other if isinstance(other, MPoly) else MPoly.constant(self.vars, other)
        terms = dict(self.terms)
        for k, c in o.terms.items():
            terms[k] = terms.get(k, QQ(0)) + c
        return MPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = other if isinstance(other, MPoly) else MPoly.constant(self.vars, other)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = rat(other)
            return MPoly(self.vars, {k: c * v for k, v in self.terms.items()})
        terms: Dict[Tuple[int, ...], "QQ"] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                terms[k] = terms.get(k, QQ(0)) + c1 * c2
        return MPoly(self.vars, terms)

    __rmul__ = __mul__

    def partial(self, name: str) -> "MPoly":
        i = self.vars.index(name)
        terms: Dict[Tuple[int, ...], "QQ"] = {}
        for k, c in self.terms.items():
            if k[i] == 0:
                continue
            k2 = list(k)
            k2[i] -= 1
            terms[tuple(k2)] = terms.get(tuple(k2), QQ(0)) + c * k[i]
        return MPoly(self.vars, terms)

    def eval(self, subs: Dict[str, Rat]):
        """Full evaluation to a rational (all variables bound)."""
        vals = [rat(subs[v]) for v in self.vars]
        acc = QQ(0)
        for k, c in self.terms.items():
            t = c
            for v, e in zip(vals, k):
                if e:
                    t = t * v ** e
            acc += t
        return acc

    def substitute(self, name: str, value: Rat) -> "MPoly":
        i = self.vars.index(name)
        value = rat(value)
        rest = tuple(v for v in self.vars if v != name)
        terms: Dict[Tuple[int, ...], "QQ"] = {}
        for k, c in self.terms.items():
            key = tuple(e for a, e in enumerate(k) if a != i)
            terms[key] = terms.get(key, QQ(0)) + c * value ** k[i]
        return MPoly(rest, terms)

    def eval_generic(self, subs: Dict[str, object]):
        """Evaluate with duck-typed ring values (RatFunc, UniPoly, rationals)."""
        vals = [subs[v] for v in self.vars]
        acc = None
        for k, c in self.terms.items():
            t = None
            for v, e in zip(vals, k):
                for _ in range(e):
                    t = v if t is None else t * v
            term = c if t is None else t * c
            acc = term if acc is None else acc + term
        if acc is None:
            return QQ(0)
        return acc

    def as_poly_in(self, name: str) -> List["MPoly"]:
        """Coefficient list (low -> high in `name`) over the remaining vars."""
        i = self.vars.index(name)
        rest = tuple(v for v in self.vars if v != name)
        d = self.degree(name)
        coeffs = [MPoly.zero(rest) for _ in range(max(d + 1, 1))]
        for k, c in self.terms.items():
            key = tuple(e for a, e in enumerate(k) if a != i)
            coeffs[k[i]] = coeffs[k[i]] + MPoly(rest, {key: c})
        while len(coeffs) > 1 and coeffs[-1].is_zero:
            coeffs.pop()
        return coeffs

    def to_unipoly(self, var: str = None) -> UniPoly:
        if len(self.vars) != 1:
            raise ValueError("not univariate")
        d = self.degree(self.vars[0])
        coeffs = [QQ(0)] * (d + 1 if d >= 0 else 1)
        for k, c in self.terms.items():
            coeffs[k[0]] = c
        return UniPoly(coeffs, var or self.vars[0])


# ---------------------------------------------------------------------------
# determinants / resultants over arbitrary rings (duck-typed +, -, *)
# ---------------------------------------------------------------------------


def det_ring(rows: List[List], zero):
    """Exact determinant by minor expansion with subset memoization.

    Entries only need +, -, *; fine for MPoly/UniPoly matrices up to ~8x8.
    """
    n = len(rows)
    if n == 0:
        return zero + 1
    memo: Dict[Tuple[int, ...], object] = {}

    def minor(cols: Tuple[int, ...]):
        row = n - len(cols)
        if len(cols) == 1:
            return rows[row][cols[0]]
        if cols in memo:
            return memo[cols]
        acc = zero
        sign_pos = True
        for idx, c in enumerate(cols):
            entry = rows[row][c]
            is_z = entry.is_zero if hasattr(entry, "is_zero") else entry == 0
            if not is_z:
                sub = minor(cols[:idx] + cols[idx + 1 :])
                term = entry * sub
                acc = acc + term if sign_pos else acc - term
            sign_pos = not sign_pos
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))


def sylvester_resultant_lists(a: List, b: List, zero):
    """Resultant of two coefficient lists (low -> high) over a ring.

    Builds the Sylvester matrix and expands it exactly; list entries are ring
    elements (MPoly, UniPoly, rationals).
    """

    def trim(c):
        c = list(c)
        while c and (c[-1].is_zero if hasattr(c[-1], "is_zero") else c[-1] == 0):
            c.pop()
        return c

    a, b = trim(a), trim(b)
    if not a or not b:
        raise ZeroInput("resultant of a zero polynomial")
    m, n = len(a) - 1, len(b) - 1
    if m == 0 and n == 0:
        return zero + 1
    if m == 0:
        acc = zero + 1
        for _ in range(n):
            acc = acc * a[0]
        return acc
    if n == 0:
        acc = zero + 1
        for _ in range(m):
            acc = acc * b[0]
        return acc
    size = m + n
    ra = list(reversed(a))
    rb = list(reversed(b))
    rows = []
    for i in range(n):
        rows.append([zero] * i + ra + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + rb + [zero] * (size - n - 1 - i))
    return det_ring(rows, zero)


def determinant_polynomial(rows: List[List], zero):
    """Determinant polynomial of a wide matrix over a ring.

    rows: s coefficient rows of width w >= s (high power first).  Returns the
    coefficient list (low -> high) of sum_k det(cols 0..s-2, col s-1+k) x^k,
    the classical construction behind determinant-defined subresultants.
    """
    s = len(rows)
    w = len(rows[0]) if s else 0
    if any(len(r) != w for r in rows):
        raise ValueError("ragged rows")
    if w < s:
        raise ValueError("matrix too narrow")
    out = []
    for k in range(w - s, -1, -1):
        cols = list(range(s - 1)) + [s - 1 + k]
        sub = [[row[c] for c in cols] for row in rows]
        out.append(det_ring(sub, zero))
    return out


def subresultant_polynomial(a: List, b: List, j: int, zero) -> List:
    """j-th subresultant polynomial of two coefficient lists over a ring.

    Inputs low -> high; output low -> high with length <= j+1.  Computed from
    the determinant definition, so it specializes correctly under any ring
    map (the property the RUR lifts rely on).
    """

    def trim(c):
        c = list(c)
        while c and (c[-1].is_zero if hasattr(c[-1], "is_zero") else c[-1] == 0):
            c.pop()
        return c

    a, b = trim(a), trim(b)
    if not a or not b:
        raise ZeroInput("subresultant of a zero polynomial")
    m, n = len(a) - 1, len(b) - 1
    if j >= min(m, n):
        raise ValueError("subresultant index must be below both degrees")
    ra = list(reversed(a))
    rb = list(reversed(b))
    width = m + n - j
    rows = []
    for i in range(n - 1 - j, -1, -1):  # x^i * a, highest shift first
        rows.append([zero] * (n - 1 - j - i) + ra + [zero] * (width - m - 1 - (n - 1 - j - i)))
    for i in range(m - 1 - j, -1, -1):
        rows.append([zero] * (m - 1 - j - i) + rb + [zero] * (width - n - 1 - (m - 1 - j - i)))
    return determinant_polynomial(rows, zero)
