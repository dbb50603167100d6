"""Exact linear algebra over the rationals.

Rank and determinants run fraction-free (Bareiss) on integer-scaled rows;
nullspaces come from the echelon form by exact back-substitution and are
returned as primitive integer vectors.
"""
from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

from .qq import QQ, ZZ, Rat, rat


class RatMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[Rat]]):
        self.rows = tuple(tuple(rat(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols})"

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.rows))) if self.rows else RatMatrix([])

    def to_int_rows(self) -> List[List]:
        """Rows rescaled to integers (row-wise lcm of denominators)."""
        out = []
        for row in self.rows:
            den = 1
            for x in row:
                d = int(x.denominator)
                den = den // math.gcd(den, d) * d
            out.append([ZZ(int(x.numerator) * (den // int(x.denominator))) for x in row])
        return out

    def column(self, j: int) -> List:
        return [r[j] for r in self.rows]

    def mul_vector(self, v: Sequence[Rat]) -> List:
        v = [rat(x) for x in v]
        return [sum((row[j] * v[j] for j in range(self.ncols)), QQ(0)) for row in self.rows]

    def stack(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(list(self.rows) + list(other.rows))


def _echelon_int(rows: List[List]) -> Tuple[List[List], List[int]]:
    """Fraction-free row echelon (Bareiss); returns echelon rows and pivot cols."""
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: List[int] = []
    r = 0
    prev = ZZ(1)
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nr):
            if all(x == 0 for x in m[i]):
                continue
            for j in range(c + 1, nc):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = ZZ(0)
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m, pivots


def exact_rank(mat: RatMatrix) -> int:
    """Rank over Q, computed by fraction-free elimination."""
    if mat.nrows == 0 or mat.ncols == 0:
        return 0
    _, pivots = _echelon_int(mat.to_int_rows())
    return len(pivots)


def bareiss_det(mat: RatMatrix):
    if mat.nrows != mat.ncols:
        raise ValueError("determinant of a non-square matrix")
    if mat.nrows == 0:
        return QQ(1)
    scale = QQ(1)
    int_rows = []
    for row in mat.rows:
        den = 1
        for x in row:
            d = int(x.denominator)
            den = den // math.gcd(den, d) * d
        scale /= den
        int_rows.append([ZZ(int(x.numerator) * (den // int(x.denominator))) for x in row])
    return scale * QQ(int(_int_det(int_rows)))


def _int_det(m: List[List]):
    n = len(m)
    if n == 0:
        return ZZ(1)
    m = [row[:] for row in m]
    sgn = 1
    prev = ZZ(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sgn = -sgn
                    break
            else:
                return ZZ(0)
        pk = m[k][k]
        for i in range(k + 1, n):
            hik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - hik * row_k[j]) // prev
            row_i[k] = ZZ(0)
        prev = pk
    return sgn * m[-1][-1]


def int_det(rows: Sequence[Sequence]) -> int:
    """Exact determinant of an integer matrix (fraction-free)."""
    return int(_int_det([[ZZ(int(x)) for x in row] for row in rows]))


def nullspace(mat: RatMatrix) -> List[List]:
    """Right nullspace basis as primitive integer vectors.

    Forward elimination is fraction-free; back-substitution is exact rational
    and each basis vector is cleared to a primitive integer vector.
    """
    if mat.ncols == 0:
        return []
    if mat.nrows == 0:
        return [_unit(mat.ncols, j) for j in range(mat.ncols)]
    ech, pivots = _echelon_int(mat.to_int_rows())
    nc = mat.ncols
    free = [j for j in range(nc) if j not in pivots]
    basis = []
    for fj in free:
        v: List = [QQ(0)] * nc
        v[fj] = QQ(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = QQ(0)
            for j in range(pc + 1, nc):
                if v[j] != 0:
                    s += QQ(int(ech[r][j])) * v[j]
            v[pc] = -s / QQ(int(ech[r][pc]))
        basis.append(_primitive_vector(v))
    return basis


def left_nullspace(mat: RatMatrix) -> List[List]:
    return nullspace(mat.transpose())


def _unit(n: int, j: int) -> List:
    v = [ZZ(0)] * n
    v[j] = ZZ(1)
    return v


def _primitive_vector(v: Sequence[Rat]) -> List:
    den = 1
    for x in v:
        d = int(rat(x).denominator)
        den = den // math.gcd(den, d) * d
    ints = [int(rat(x).numerator) * (den // int(rat(x).denominator)) for x in v]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    if g == 0:
        return [ZZ(0) for _ in ints]
    lead_neg = next((a for a in ints if a != 0), 1) < 0
    if lead_neg:
        g = -g
    return [ZZ(a // g) for a in ints]


def solve(mat: RatMatrix, rhs: Sequence[Rat]) -> Optional[List]:
    """One exact solution of mat @ x = rhs, or None if inconsistent."""
    aug = RatMatrix([list(row) + [rat(rhs[i])] for i, row in enumerate(mat.rows)])
    ech, pivots = _echelon_int(aug.to_int_rows())
    nc = mat.ncols
    if any(p == nc for p in pivots):
        return None
    x: List = [QQ(0)] * nc
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        s = QQ(int(ech[r][nc]))
        for j in range(pc + 1, nc):
            if x[j] != 0:
                s -= QQ(int(ech[r][j])) * x[j]
        x[pc] = s / QQ(int(ech[r][pc]))
    return x
