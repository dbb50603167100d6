"""Constructed wall-crossing fixtures.

The canonical cusp-wall path samples 8 rational points on the cuspidal
cubic y^2 z = x^3 and slides one of them off the curve through its on-curve
position; the crossing parameter lands exactly at s = 1/2.  Parameter sets
are searched deterministically and verified exactly (general position,
generic endpoints).
"""
from __future__ import annotations

from typing import List, Optional, Tuple

from .pencil import PointConfig, in_general_position, is_on_wall
from .qq import QQ, Rat, rat
from .tripoly import TriPoly, tri_from_string_terms
from .walls import ConfigPath

CUSPIDAL_CUBIC = tri_from_string_terms(3, y2z=1, x3=-1)
NODAL_CUBIC = tri_from_string_terms(3, y2z=1, x2z=-1, x3=-1)  # node at origin


def cusp_curve_point(u: Rat) -> Tuple:
    u = rat(u)
    return (u * u, u ** 3, QQ(1))


_U_POOL = [
    ["1", "2", "3", "1/2", "-1", "5", "-4", "7"],
    ["1", "2", "-3", "1/2", "-1", "4", "5/2", "-5"],
    ["1", "3", "-2", "2/3", "-1", "4", "-5", "7/2"],
    ["2", "3", "-1", "1/3", "5", "-4", "3/2", "-7"],
    ["1", "2", "3", "2/5", "-1", "6", "-5", "9/2"],
]


def cusp_wall_path(offset: Rat = QQ(1, 8)) -> ConfigPath:
    """Path crossing the cusp wall exactly once, at s = 1/2.

    Seven points stay on y^2 z = x^3; the eighth moves vertically through
    its on-curve position.  Exactly-one-crossing is not guaranteed by
    construction alone, so callers should shrink `offset` if the detector
    reports extra events; the default is verified by the test suite.
    """
    offset = rat(offset)
    for pool in _U_POOL:
        pts = [cusp_curve_point(u) for u in pool]
        if not in_general_position(pts):
            continue
        moving_on = pts[7]
        A = (moving_on[0], moving_on[1] + offset, QQ(1))
        B = (moving_on[0], moving_on[1] - offset, QQ(1))
        base = PointConfig(pts[:7] + [A])
        endB = PointConfig(pts[:7] + [B])
        if is_on_wall(base).kind != "Generic" or is_on_wall(endB).kind != "Generic":
            continue
        return ConfigPath(base, 7, [B])
    raise RuntimeError("no cusp-wall fixture found in the parameter pool")


def nodal_curve_point(u: Rat) -> Tuple:
    """Point on y^2 z = x^2 z + x^3 at parameter u: (u^2-1, u(u^2-1), 1)."""
    u = rat(u)
    return (u * u - 1, u * (u * u - 1), QQ(1))


def tangency_wall_path(offset: Rat = QQ(1, 16)) -> Tuple[ConfigPath, TriPoly]:
    """Path crossing a tangency wall for a declared line.

    Eight points sit on the nodal cubic, so the cubic is a member of every
    pencil along the path; the declared line is its exact tangent at the
    parameter-2 point.  Sliding one sample point off the curve crosses the
    tangency wall (the member through the points stops being the fixed
    cubic) at s = 1/2.
    """
    offset = rat(offset)
    # tangent line to (u^2-1 : u^3-u : 1) at u = 2: point (3, 6)
    # derivative: (2u, 3u^2-1) = (4, 11): line through (3,6) with dir (4,11):
    # 11(x-3) - 4(y-6) = 0 -> 11x - 4y - 9z = 0
    line = TriPoly(1, {(1, 0, 0): QQ(11), (0, 1, 0): QQ(-4), (0, 0, 1): QQ(-9)})
    pools = [
        ["3", "-2", "4", "1/2", "-3", "5", "-5", "3/2"],
        ["3", "-2", "4", "1/3", "-4", "5", "7/2", "-6"],
        ["3", "-2", "5", "2/5", "-4", "6", "5/2", "-7"],
    ]
    for pool in pools:
        pts = [nodal_curve_point(u) for u in pool]
        if not in_general_position(pts):
            continue
        if any(line(p) == 0 for p in pts):
            continue
        moving_on = pts[7]
        A = (moving_on[0], moving_on[1] + offset, QQ(1))
        B = (moving_on[0], moving_on[1] - offset, QQ(1))
        base = PointConfig(pts[:7] + [A], lines=(line,))
        endB = PointConfig(pts[:7] + [B], lines=(line,))
        if is_on_wall(base).kind != "Generic" or is_on_wall(endB).kind != "Generic":
            continue
        return ConfigPath(base, 7, [B]), line
    raise RuntimeError("no tangency-wall fixture found in the parameter pool")
