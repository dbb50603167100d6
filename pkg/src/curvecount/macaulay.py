"""Exact resultant of three ternary quadrics via Macaulay's quotient formula.

disc(F) of a ternary cubic F is, up to a universal constant, the resultant
of its three partial quadrics; the pencil discriminant is built from exact
evaluations of this resultant at integer parameter values.
"""
from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import _int_det
from .qq import QQ, ZZ
from .tripoly import TriPoly, monomials_of_degree

_DEG4 = monomials_of_degree(4)
_DEG2 = monomials_of_degree(2)
_COL_INDEX = {m: i for i, m in enumerate(_DEG4)}

# Macaulay partition in critical degree 4: a monomial is charged to the
# first variable whose exponent reaches 2
_CLASS_OF = {}
for _m in _DEG4:
    for _axis in range(3):
        if _m[_axis] >= 2:
            _CLASS_OF[_m] = _axis
            break

# non-reduced monomials (divisible by two distinct squares) index the minor
_MINOR_MONOS = [(2, 2, 0), (2, 0, 2), (0, 2, 2)]


def _unimodular_changes(max_count: int):
    yield None  # identity first
    rng = random.Random(0xACA7)
    for _ in range(max_count - 1):
        m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        for _ in range(3):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-2, 2)
            for k in range(3):
                m[i][k] += c * m[j][k]
        yield m


def _quadric_int_coeffs(q: TriPoly) -> Dict[Tuple[int, int, int], int]:
    out = {}
    for m, c in q.terms.items():
        if int(c.denominator) != 1:
            raise ValueError("integer quadrics required")
        out[m] = int(c.numerator)
    return out


def resultant_three_quadrics(q0: TriPoly, q1: TriPoly, q2: TriPoly, max_changes: int = 12):
    """Res_{2,2,2}(q0, q1, q2) as an exact integer.

    Macaulay: det(M) = Res * det(M'); when the minor degenerates, an SL3
    change of variables (which leaves the resultant invariant) is applied.
    """
    quads = (q0, q1, q2)
    for change in _unimodular_changes(max_changes):
        if change is None:
            cur = quads
        else:
            cur = tuple(q.transform(change) for q in quads)
        value = _macaulay_attempt(cur)
        if value is not None:
            return value
    raise ArithmeticError("Macaulay minor degenerate for every variable change")


def _macaulay_attempt(quads: Sequence[TriPoly]) -> Optional[int]:
    coeffs = [_quadric_int_coeffs(q) for q in quads]
    rows = []
    for mono in _DEG4:
        axis = _CLASS_OF[mono]
        shifted = list(mono)
        shifted[axis] -= 2
        row = [0] * len(_DEG4)
        for qm, c in coeffs[axis].items():
            target = (qm[0] + shifted[0], qm[1] + shifted[1], qm[2] + shifted[2])
            row[_COL_INDEX[target]] = c
        rows.append(row)
    minor_idx = [_COL_INDEX[m] for m in _MINOR_MONOS]
    minor = [[rows[i][j] for j in minor_idx] for i in minor_idx]
    dminor = _int_det([[ZZ(x) for x in r] for r in minor])
    if dminor == 0:
        return None
    dfull = _int_det([[ZZ(x) for x in r] for r in rows])
    q, r = divmod(int(dfull), int(dminor))
    if r != 0:
        raise ArithmeticError("Macaulay quotient failed to divide exactly")
    return q


def cubic_disc_value(F: TriPoly) -> int:
    """Resultant of the partial quadrics of an integer ternary cubic.

    Vanishes exactly when the cubic is singular; proportional to the cubic
    discriminant with a fixed universal normalization.
    """
    if F.degree != 3:
        raise ValueError("ternary cubic required")
    fx, fy, fz = F.gradient()
    return resultant_three_quadrics(fx, fy, fz)
