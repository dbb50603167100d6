"""Configuration paths, exact wall detection, and crossing verification.

A path moves one point along piecewise-linear rational segments.  Per
segment the pencil discriminant becomes an exact bivariate D(t, s); wall
parameters are the real roots of Res_t(D, dD/dt) in (0,1), located exactly
(interpolated resultant values, certified modular squarefree part, certified
subdivision isolation) and classified by exact membership tests against the
explicit degeneration polynomials plus exact before/after probes.
"""
from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .alg import AlgebraicNumber
from .bigroots import isolate_real_roots_big, squarefree_part_big
from .curves import line_span_points
from .errors import (
    DegenerateConfig,
    IdenticallyDegeneratePath,
    InvariantViolation,
    OnWall,
    PrecisionExhausted,
    SamplerExhausted,
)
from .linalg import RatMatrix, exact_rank, int_det
from .pencil import (
    DISC_DEGREE,
    EnumReport,
    PencilBasis,
    PointConfig,
    certify_config,
    cubic_system,
    enumerate_members,
    in_general_position,
    is_on_wall,
    line_constrained_count,
    monomials_of_degree,
    random_point_config,
)
from .qq import QQ, ZZ, Rat, rat
from .tripoly import TriPoly
from .unipoly import (
    IsolInterval,
    UniPoly,
    isolate_real_roots,
    lagrange_interpolate,
    poly_gcd,
    squarefree_decomposition,
    zz_resultant,
    zz_trim,
)
from .macaulay import cubic_disc_value


class ConfigPath:
    """One moving point along rational breakpoints; s runs over [0, 1]."""

    __slots__ = ("base", "moving_index", "breakpoints")

    def __init__(self, base: PointConfig, moving_index: int,
                 breakpoints: Sequence[Sequence[Rat]]):
        self.base = base
        self.moving_index = moving_index
        self.breakpoints = [tuple(rat(c) for c in b) for b in breakpoints]
        if not self.breakpoints:
            raise ValueError("a path needs at least one breakpoint")

    @property
    def segments(self) -> List[Tuple[Tuple, Tuple]]:
        pts = [self.base.points[self.moving_index]] + self.breakpoints
        return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]

    def config_at(self, s: Rat) -> PointConfig:
        s = rat(s)
        segs = self.segments
        m = len(segs)
        if s >= 1:
            pos = segs[-1][1]
        else:
            scaled = s * m
            idx = min(int(scaled), m - 1)
            local = scaled - idx
            A, B = segs[idx]
            pos = tuple((1 - local) * A[i] + local * B[i] for i in range(3))
        return self.base.replace_point(self.moving_index, pos)


class WallEvent:
    __slots__ = ("s_interval", "kind", "line", "detail", "before", "after",
                 "before_s", "after_s", "line_counts")

    def __init__(self, s_interval: IsolInterval, kind: str,
                 line: Optional[int] = None, detail: str = ""):
        self.s_interval = s_interval
        self.kind = kind  # CuspWall | TangencyWall | NonGeneric | ConjugatePairEvent
        self.line = line
        self.detail = detail
        self.before: Optional[EnumReport] = None
        self.after: Optional[EnumReport] = None
        self.before_s: Optional[Rat] = None
        self.after_s: Optional[Rat] = None
        self.line_counts: Optional[Tuple] = None

    def __repr__(self):
        return f"WallEvent({self.kind}, s in {self.s_interval})"


class ChamberSample:
    __slots__ = ("config", "report", "fingerprint")

    def __init__(self, config: PointConfig, report: EnumReport):
        self.config = config
        self.report = report
        self.fingerprint = report.fingerprint()


# ---------------------------------------------------------------------------
# per-segment exact machinery
# ---------------------------------------------------------------------------


class _SegmentData:
    """Exact bivariate data for one linear segment of the moving point."""

    def __init__(self, path: ConfigPath, seg_index: int):
        self.path = path
        self.seg_index = seg_index
        A, B = path.segments[seg_index]
        self.start, self.end = A, B
        static = [p for i, p in enumerate(path.base.points) if i != path.moving_index]
        self.static = static
        if not in_general_position(static):
            raise DegenerateConfig("static points are not in general position")
        # moving condition row: cubic monomials of (1-s)A + sB, degree <= 3 in s
        monos = monomials_of_degree(3)
        xs = UniPoly([A[0], B[0] - A[0]], "s")
        ys = UniPoly([A[1], B[1] - A[1]], "s")
        zs = UniPoly([A[2], B[2] - A[2]], "s")
        self.moving_row = [xs ** i * ys ** j * zs ** k for (i, j, k) in monos]
        self.static_rows = []
        for p in static:
            self.static_rows.append([p[0] ** i * p[1] ** j * p[2] ** k for (i, j, k) in monos])
        self._choose_null_pair()
        self._build_bivariate_disc()

    # -- pencil family --------------------------------------------------------

    def _minor_poly(self, cols: Tuple[int, ...]) -> UniPoly:
        """det of the 8x8 submatrix on `cols`: static block + moving row."""
        sub_static = [[row[c] for c in cols] for row in self.static_rows]
        acc = UniPoly.zero("s")
        for pos, c in enumerate(cols):
            minor_cols = cols[:pos] + cols[pos + 1 :]
            cache_key = minor_cols
            det7 = self._static7.get(cache_key)
            if det7 is None:
                det7 = int_det([[row[cc] for cc in minor_cols] for row in self.static_rows])
                self._static7[cache_key] = det7
            sign = -1 if (7 + pos) % 2 else 1
            acc = acc + self.moving_row[c] * (sign * det7)
        return acc

    def _null_vector(self, drop_col: int) -> List[UniPoly]:
        cols = [c for c in range(10) if c != drop_col]
        vec = [UniPoly.zero("s")] * 10
        for j, cj in enumerate(cols):
            minor_cols = tuple(cols[:j] + cols[j + 1 :])
            det8 = self._minor_poly(minor_cols)
            vec[cj] = det8 if j % 2 == 0 else -det8
        return vec

    def _choose_null_pair(self) -> None:
        self._static7: Dict[Tuple[int, ...], int] = {}
        candidates = [(0, 9), (0, 8), (1, 9), (0, 7), (2, 9), (1, 8), (3, 9)]
        for c1, c2 in candidates:
            v1 = self._null_vector(c1)
            v2 = self._null_vector(c2)
            if all(p.is_zero for p in v1) or all(p.is_zero for p in v2):
                continue
            # independence of the pair on the whole segment: the 2x2 minors
            # must have no common root in [0, 1]
            g: Optional[UniPoly] = None
            for a in range(10):
                for b in range(a + 1, 10):
                    m = v1[a] * v2[b] - v1[b] * v2[a]
                    if m.is_zero:
                        continue
                    g = m if g is None else poly_gcd(g, m)
                    if g.degree == 0:
                        break
                if g is not None and g.degree == 0:
                    break
            if g is None:
                continue
            if g.degree > 0:
                bad = [iv for iv in isolate_real_roots(g)
                       if iv.upper >= 0 and iv.lower <= 1]
                if bad:
                    continue
            self.F0s, self.F1s = v1, v2
            return
        raise IdenticallyDegeneratePath("no independent pencil family on the segment")

    def basis_at(self, s: Rat) -> PencilBasis:
        s = rat(s)
        F0 = TriPoly.from_coeff_vector(3, [p(s) for p in self.F0s]).content_cleared()
        F1 = TriPoly.from_coeff_vector(3, [p(s) for p in self.F1s]).content_cleared()
        return PencilBasis(F0, F1)

    # -- bivariate discriminant -------------------------------------------------

    def _build_bivariate_disc(self) -> None:
        """D(t, s) on a 13 x 37 integer grid, then tensor interpolation."""
        t_nodes = list(range(-6, 7))
        s_nodes = list(range(-18, 19))
        per_s: List[UniPoly] = []
        for sj in s_nodes:
            f0 = [p(sj) for p in self.F0s]
            f1 = [p(sj) for p in self.F1s]
            vals = []
            for ti in t_nodes:
                F = TriPoly.from_coeff_vector(3, [f0[m] + ti * f1[m] for m in range(10)])
                vals.append(QQ(int(cubic_disc_value(F))))
            per_s.append(lagrange_interpolate(list(zip(t_nodes, vals)), "t"))
        # interpolate each t-coefficient across s
        coeffs_ts: List[UniPoly] = []
        for k in range(DISC_DEGREE + 1):
            pts = []
            for sj, pol in zip(s_nodes, per_s):
                c = pol.coeffs[k] if k < len(pol.coeffs) else QQ(0)
                pts.append((sj, c))
            coeffs_ts.append(lagrange_interpolate(pts, "s"))
        # validation at an extra grid point
        sj, ti = 19, 7
        f0 = [p(sj) for p in self.F0s]
        f1 = [p(sj) for p in self.F1s]
        F = TriPoly.from_coeff_vector(3, [f0[m] + ti * f1[m] for m in range(10)])
        direct = QQ(int(cubic_disc_value(F)))
        interp = sum((coeffs_ts[k](sj) * QQ(ti) ** k for k in range(len(coeffs_ts))), QQ(0))
        if direct != interp:
            raise AssertionError("bivariate discriminant interpolation failed validation")
        # clear the polynomial s-content; its roots in (0,1) are degenerate events
        content: Optional[UniPoly] = None
        for c in coeffs_ts:
            if c.is_zero:
                continue
            content = c if content is None else poly_gcd(content, c)
            if content.degree == 0:
                break
        self.content_events: List[IsolInterval] = []
        if content is None:
            raise IdenticallyDegeneratePath("discriminant vanishes identically in t and s")
        if content.degree > 0:
            for iv in isolate_real_roots(content):
                if iv.upper >= 0 and iv.lower <= 1:
                    self.content_events.append(iv)
            coeffs_ts = [c // content if not c.is_zero else c for c in coeffs_ts]
        self.disc_ts = coeffs_ts  # t-coefficients, each a UniPoly in s

    def disc_at_s(self, s: Rat) -> UniPoly:
        return UniPoly([c(s) for c in self.disc_ts], "t")

    def wall_resultant(self) -> UniPoly:
        """R(s) = Res_t(D, dD/dt) exactly, by values at integer nodes.

        A fixed-size Sylvester determinant would be the formal object; at
        nodes without t-degree drop it coincides with the resultant of the
        specialized pair, and nodes with a drop use the formal determinant.
        """
        deg_s = max((c.degree for c in self.disc_ts if not c.is_zero), default=0)
        n_deg = 23 * deg_s + 1
        values: List[int] = []
        lc_poly = self.disc_ts[-1]
        for j in range(n_deg + 1):
            d = [c(j) for c in self.disc_ts]
            values.append(int(self._formal_resultant_value(d)))
        R = _newton_interpolate_int(values)
        # validation at one extra node
        extra = n_deg + 1
        d = [c(extra) for c in self.disc_ts]
        if R(extra) != QQ(int(self._formal_resultant_value(d))):
            raise AssertionError("wall resultant interpolation failed validation")
        rint = R.primitive_int()
        return UniPoly.from_int_coeffs(rint, "s") if rint else UniPoly.zero("s")

    @staticmethod
    def _formal_resultant_value(dcoeffs: List) -> int:
        """Value of the formal Res_t of (D, D_t) with D padded to degree 12."""
        d = [QQ(c) for c in dcoeffs] + [QQ(0)] * (DISC_DEGREE + 1 - len(dcoeffs))
        if d[-1] != 0:
            dint = [int(x.numerator) for x in d]
            assert all(int(x.denominator) == 1 for x in d)
            ddt = [dint[i] * i for i in range(1, len(dint))]
            return int(zz_resultant(dint, ddt))
        # leading coefficient vanished: fall back to the 23x23 determinant
        dint = [ZZ(int(x.numerator)) for x in d]
        ddt = [dint[i] * i for i in range(1, DISC_DEGREE + 1)]
        size = 2 * DISC_DEGREE - 1
        rows = []
        ra = list(reversed(dint))
        rb = list(reversed(ddt))
        for i in range(DISC_DEGREE - 1):
            rows.append([ZZ(0)] * i + ra + [ZZ(0)] * (size - len(ra) - i))
        for i in range(DISC_DEGREE):
            rows.append([ZZ(0)] * i + rb + [ZZ(0)] * (size - len(rb) - i))
        return int_det(rows)

    # -- explicit degeneration polynomials ---------------------------------------

    def collision_polys(self) -> List[UniPoly]:
        """Moving point colliding with a static point (all cross minors zero)."""
        A, B = self.start, self.end
        xs = UniPoly([A[0], B[0] - A[0]], "s")
        ys = UniPoly([A[1], B[1] - A[1]], "s")
        zs = UniPoly([A[2], B[2] - A[2]], "s")
        out = []
        for p in self.static:
            m1 = xs * p[1] - ys * p[0]
            m2 = xs * p[2] - zs * p[0]
            m3 = ys * p[2] - zs * p[1]
            g: Optional[UniPoly] = None
            for m in (m1, m2, m3):
                if m.is_zero:
                    continue
                g = m if g is None else poly_gcd(g, m)
            if g is not None and g.degree > 0:
                out.append(g)
        return out

    def reducible_member_polys(self) -> List[UniPoly]:
        """Parameters where the pencil owns a line+conic member.

        Two mechanisms: the moving point lands on (conic through 5 statics)
        union (line through the other 2), or becomes collinear with 2
        statics (the conic through the other 5 always exists).
        """
        import itertools

        out = []
        A, B = self.start, self.end
        xs = UniPoly([A[0], B[0] - A[0]], "s")
        ys = UniPoly([A[1], B[1] - A[1]], "s")
        zs = UniPoly([A[2], B[2] - A[2]], "s")
        static = self.static
        for line_pair in itertools.combinations(range(7), 2):
            conic_pts = [static[i] for i in range(7) if i not in line_pair]
            p1, p2 = static[line_pair[0]], static[line_pair[1]]
            conic = _conic_through(conic_pts)
            line = _line_coeffs(p1, p2)
            if conic is None or line is None:
                continue
            # gamma(s) = conic(p(s)) * line(p(s))
            cval = _eval_form(conic, 2, xs, ys, zs)
            lval = line[0] * xs + line[1] * ys + line[2] * zs
            prod = cval * lval
            if not prod.is_zero:
                out.append(prod)
        for pair in itertools.combinations(range(7), 2):
            p1, p2 = static[pair[0]], static[pair[1]]
            lam = (
                xs * (p1[1] * p2[2] - p1[2] * p2[1])
                - ys * (p1[0] * p2[2] - p1[2] * p2[0])
                + zs * (p1[0] * p2[1] - p1[1] * p2[0])
            )
            if not lam.is_zero:
                out.append(lam)
        return out

    def rank_drop_poly(self) -> Optional[UniPoly]:
        """gcd of all 8x8 minors: rank < 8 exactly at its roots."""
        import itertools

        g: Optional[UniPoly] = None
        for cols in itertools.combinations(range(10), 8):
            m = self._minor_poly(tuple(cols))
            if m.is_zero:
                continue
            g = m if g is None else poly_gcd(g, m)
            if g.degree == 0:
                return None
        return g

    def tangency_resultant(self, line: TriPoly) -> UniPoly:
        """W(s) = Res_t(D, disc of member restricted to the line), exact."""
        P, Q = line_span_points(line)
        r0 = [UniPoly.zero("s")] * 4
        r1 = [UniPoly.zero("s")] * 4
        monos = monomials_of_degree(3)
        # restriction coefficients of sum F_m * mono_m along u*P + Q
        for m_idx, (i, j, k) in enumerate(monos):
            rest = TriPoly(3, {(i, j, k): QQ(1)}).restrict_to_line(P, Q)
            cs = list(rest.coeffs) + [QQ(0)] * (4 - len(rest.coeffs))
            for deg in range(4):
                if cs[deg] == 0:
                    continue
                r0[deg] = r0[deg] + self.F0s[m_idx] * cs[deg]
                r1[deg] = r1[deg] + self.F1s[m_idx] * cs[deg]
        deg_s = max(
            [c.degree for c in (*r0, *r1) if not c.is_zero] + [0]
        )
        # T(t, s) has t-degree <= 4 and s-degree <= 12*? ; sample on s, exact
        n_deg = 4 * max((c.degree for c in self.disc_ts if not c.is_zero), default=0) + 12 * deg_s + 1
        values = []
        for j in range(n_deg + 1):
            a = UniPoly([r0[3](j), r1[3](j)], "t")
            b = UniPoly([r0[2](j), r1[2](j)], "t")
            c = UniPoly([r0[1](j), r1[1](j)], "t")
            dd = UniPoly([r0[0](j), r1[0](j)], "t")
            T = (
                18 * a * b * c * dd
                - 4 * b * b * b * dd
                + b * b * c * c
                - 4 * a * c * c * c
                - 27 * a * a * dd * dd
            )
            D = self.disc_at_s(j)
            if D.is_zero or T.is_zero:
                values.append(0)
                continue
            values.append(int(_formal_res(D.primitive_int(), T.primitive_int())))
        W = _newton_interpolate_int(values)
        wint = W.primitive_int()
        return UniPoly.from_int_coeffs(wint, "s") if wint else UniPoly.zero("s")


def _formal_res(a: List, b: List) -> int:
    return int(zz_resultant(a, b))


def _conic_through(points) -> Optional[List]:
    from .linalg import nullspace

    rows = []
    for (x, y, z) in points:
        rows.append([x * x, x * y, x * z, y * y, y * z, z * z])
    ns = nullspace(RatMatrix(rows))
    if len(ns) != 1:
        return None
    return [QQ(int(c)) for c in ns[0]]


def _line_coeffs(p1, p2) -> Optional[List]:
    cx = p1[1] * p2[2] - p1[2] * p2[1]
    cy = p1[2] * p2[0] - p1[0] * p2[2]
    cz = p1[0] * p2[1] - p1[1] * p2[0]
    if cx == 0 and cy == 0 and cz == 0:
        return None
    return [cx, cy, cz]


def _eval_form(conic: List, degree: int, xs: UniPoly, ys: UniPoly, zs: UniPoly) -> UniPoly:
    monos = monomials_of_degree(degree)
    acc = UniPoly.zero("s")
    for c, (i, j, k) in zip(conic, monos):
        if c == 0:
            continue
        acc = acc + xs ** i * ys ** j * zs ** k * c
    return acc


def _newton_interpolate_int(values: List[int]) -> UniPoly:
    """Exact polynomial through (j, values[j]) via forward differences."""
    n = len(values)
    diffs = [ZZ(int(v)) for v in values]
    table = [diffs[0]]
    work = diffs
    for k in range(1, n):
        work = [work[i + 1] - work[i] for i in range(len(work) - 1)]
        table.append(work[0])
        if all(x == 0 for x in work):
            break
    import math

    poly = UniPoly.zero("s")
    basis = UniPoly.constant(1, "s")
    for k, dk in enumerate(table):
        if dk != 0:
            poly = poly + basis * QQ(int(dk), math.factorial(k))
        if k + 1 < len(table):
            basis = basis * UniPoly([-k, 1], "s")
    return poly


# ---------------------------------------------------------------------------
# event detection
# ---------------------------------------------------------------------------


def _real_root_count_at(seg: _SegmentData, s: Rat) -> int:
    D = seg.disc_at_s(s)
    if D.is_zero:
        return -1
    return sum(iv.multiplicity for iv in isolate_real_roots(D))


def detect_wall_events(path: ConfigPath, lines: Optional[Sequence[TriPoly]] = None) -> List[WallEvent]:
    """Complete exact list of wall events along the path, ordered by s."""
    if lines is None:
        lines = path.base.lines
    _require_generic_endpoints(path)
    events: List[WallEvent] = []
    segs = path.segments
    m = len(segs)
    for seg_index in range(m):
        seg = _SegmentData(path, seg_index)
        local_events = _segment_events(seg, lines)
        for ev in local_events:
            lo = (rat(seg_index) + ev.s_interval.lower) / m
            hi = (rat(seg_index) + ev.s_interval.upper) / m
            ev.s_interval = IsolInterval(lo, hi, ev.s_interval.multiplicity,
                                         factor=ev.s_interval.factor)
            events.append(ev)
    events.sort(key=lambda e: (e.s_interval.lower, e.s_interval.upper))
    return events


def _require_generic_endpoints(path: ConfigPath) -> None:
    for s in (QQ(0), QQ(1)):
        verdict = is_on_wall(path.config_at(s))
        if verdict.kind != "Generic":
            raise ValueError(f"path endpoint s={s} is not generic: {verdict!r}")


def _segment_events(seg: _SegmentData, lines: Sequence[TriPoly]) -> List[WallEvent]:
    events: List[WallEvent] = []
    for iv in seg.content_events:
        events.append(WallEvent(iv, "NonGeneric", detail="pencil degenerates identically"))
    R = seg.wall_resultant()
    if R.is_zero:
        raise IdenticallyDegeneratePath("wall resultant vanishes identically")
    rsf = squarefree_part_big(R.primitive_int())
    roots = _roots_in_unit_interval(rsf)
    small_families = {
        "collision": seg.collision_polys(),
        "reducible": seg.reducible_member_polys(),
    }
    rank_poly = seg.rank_drop_poly()
    for (lo, hi) in roots:
        iv = IsolInterval(lo, hi, 1, factor=rsf)
        alpha = AlgebraicNumber(list(rsf), iv)
        kind, detail = _classify_root(seg, alpha, small_families, rank_poly)
        ev = WallEvent(IsolInterval(lo, hi, 1, factor=rsf), kind, detail=detail)
        events.append(ev)
    for j, line in enumerate(lines):
        W = seg.tangency_resultant(line)
        if W.is_zero:
            raise IdenticallyDegeneratePath(f"tangency resultant for line {j} vanishes")
        wsf = squarefree_part_big(W.primitive_int())
        for (lo, hi) in _roots_in_unit_interval(wsf):
            iv = IsolInterval(lo, hi, 1, factor=wsf)
            # skip roots that already appear as discriminant events
            alpha = AlgebraicNumber(list(wsf), iv)
            if alpha.is_root_of(UniPoly.from_int_coeffs(rsf, "s")):
                continue
            jump = _line_jump_at(seg, line, iv)
            kind = "TangencyWall" if jump else "ConjugatePairEvent"
            detail = "" if jump else "non-real tangency pair"
            events.append(WallEvent(iv, kind, line=j, detail=detail))
    events.sort(key=lambda e: (e.s_interval.lower, e.s_interval.upper))
    _separate_events(events)
    return events


def _separate_events(events: List[WallEvent]) -> None:
    """Refine isolating intervals until consecutive events are disjoint."""
    from .unipoly import _bisect_once

    changed = True
    rounds = 0
    while changed and rounds < 200:
        changed = False
        rounds += 1
        for i in range(len(events) - 1):
            a, b = events[i], events[i + 1]
            if a.s_interval.upper >= b.s_interval.lower:
                for ev in (a, b):
                    iv = ev.s_interval
                    if iv.is_exact or iv.factor is None:
                        continue
                    lo, hi = _bisect_once(iv.factor, iv.lower, iv.upper)
                    ev.s_interval = IsolInterval(lo, hi, iv.multiplicity, factor=iv.factor)
                changed = True
        events.sort(key=lambda e: (e.s_interval.lower, e.s_interval.upper))
    if rounds >= 200:
        raise PrecisionExhausted("wall events could not be separated")


def _roots_in_unit_interval(rsf: List) -> List[Tuple[Rat, Rat]]:
    from .unipoly import zz_sign_at

    f = list(rsf)
    out = []
    # roots exactly at 0 or 1 would violate the generic-endpoint precondition
    if zz_sign_at(f, 0, 1) == 0 or zz_sign_at(f, 1, 1) == 0:
        raise ValueError("wall exactly at a path endpoint")
    return isolate_real_roots_big(f, rat(0), rat(1))


def _classify_root(seg: _SegmentData, alpha: AlgebraicNumber,
                   small_families: Dict[str, List[UniPoly]],
                   rank_poly: Optional[UniPoly]) -> Tuple[str, str]:
    for p in small_families["collision"]:
        if alpha.is_root_of(p):
            return "NonGeneric", "moving point collides with a configuration point"
    if rank_poly is not None and rank_poly.degree > 0 and alpha.is_root_of(rank_poly):
        return "NonGeneric", "cubic condition matrix drops rank"
    for p in small_families["reducible"]:
        if alpha.is_root_of(p):
            return "NonGeneric", "pencil owns a reducible (line+conic) member"
    # remaining: a genuine multiple t-root; real collisions shift the real
    # count by 2 (cusp wall), conjugate complex collisions leave it fixed
    lo, hi = _clear_margin(seg, alpha)
    before = _real_root_count_at(seg, lo)
    after = _real_root_count_at(seg, hi)
    if abs(before - after) == 2:
        return "CuspWall", ""
    if before == after:
        return "ConjugatePairEvent", "conjugate complex members collide"
    return "NonGeneric", f"real member count jumps by {abs(before-after)}"


def _clear_margin(seg: _SegmentData, alpha: AlgebraicNumber) -> Tuple[Rat, Rat]:
    """Rational points just left/right of the root, clear of other roots."""
    f = alpha.poly
    iv = alpha.interval
    width = iv.upper - iv.lower
    lo = iv.lower - width / 4
    hi = iv.upper + width / 4
    from .unipoly import zz_sign_at, sturm_chain, sturm_count

    chain = sturm_chain(f)
    for _ in range(64):
        ok_lo = zz_sign_at(f, int(rat(lo).numerator), int(rat(lo).denominator)) != 0
        ok_hi = zz_sign_at(f, int(rat(hi).numerator), int(rat(hi).denominator)) != 0
        if ok_lo and ok_hi and sturm_count(chain, lo, hi) == 1 and rat(lo) > 0 and rat(hi) < 1:
            return rat(lo), rat(hi)
        alpha.refine_once()
        iv = alpha.interval
        width = iv.upper - iv.lower
        lo = iv.lower - width / 4
        hi = iv.upper + width / 4
    raise PrecisionExhausted("could not clear a margin around the wall parameter")


def _line_jump_at(seg: _SegmentData, line: TriPoly, iv: IsolInterval) -> bool:
    """Does the real line-intersection pattern change across this root?"""
    alpha = AlgebraicNumber(list(iv.factor), iv)
    lo, hi = _clear_margin(seg, alpha)
    return _line_profile(seg, line, lo) != _line_profile(seg, line, hi)


def _line_profile(seg: _SegmentData, line: TriPoly, s: Rat) -> Tuple[int, ...]:
    from .pencil import line_restriction_disc

    basis = seg.basis_at(s)
    L, _ = line_restriction_disc(basis, line)
    D = seg.disc_at_s(s)
    counts = []
    for ivr in isolate_real_roots(D):
        a = AlgebraicNumber(ivr.factor, ivr)
        sgn = a.sign_of(L)
        counts.append(3 if sgn > 0 else (1 if sgn < 0 else 0))
    return tuple(sorted(counts))


# ---------------------------------------------------------------------------
# crossing reports
# ---------------------------------------------------------------------------


def crossing_report(path: ConfigPath) -> List[WallEvent]:
    """Events with exact before/after enumeration and invariant checks."""
    events = detect_wall_events(path)
    probes = _probe_points(events)
    with_lines = bool(path.base.lines)
    reports = {}
    line_totals = {}
    for s in probes:
        cfg = path.config_at(s)
        reports[s] = enumerate_members(cfg)
        if with_lines:
            line_totals[s] = line_constrained_count(cfg)
    for idx, ev in enumerate(events):
        s_before = probes[idx]
        s_after = probes[idx + 1]
        ev.before_s, ev.after_s = s_before, s_after
        ev.before, ev.after = reports[s_before], reports[s_after]
        if with_lines:
            ev.line_counts = (line_totals[s_before], line_totals[s_after])
        _check_invariants(ev)
    return events


def _probe_points(events: List[WallEvent]) -> List[Rat]:
    """Rational probes between consecutive events (and the path endpoints)."""
    probes = []
    prev_hi = QQ(0)
    for ev in events:
        probes.append((prev_hi + ev.s_interval.lower) / 2)
        prev_hi = ev.s_interval.upper
    probes.append((prev_hi + 1) / 2)
    return probes


def _check_invariants(ev: WallEvent) -> None:
    b, a = ev.before, ev.after
    if ev.kind == "CuspWall":
        if abs(b.real_count - a.real_count) != 2:
            raise InvariantViolation(
                f"cusp wall real-count jump {b.real_count}->{a.real_count}"
            )
        if b.signed_count != a.signed_count:
            raise InvariantViolation("signed count changed across a cusp wall")
        iso_b = sum(b.isolated_node_histogram)
        iso_a = sum(a.isolated_node_histogram)
        if abs(iso_b - iso_a) != 1:
            raise InvariantViolation(
                f"isolated-node total changed by {abs(iso_b - iso_a)} across a cusp wall"
            )
        rich, poor = (b, a) if b.real_count > a.real_count else (a, b)
        diff = _member_multiset_difference(rich, poor)
        if diff is None or sorted(diff) != ["NodeIsolated", "NodeNonIsolated"]:
            raise InvariantViolation(
                "the colliding pair is not one isolated plus one non-isolated node"
            )
    elif ev.kind == "ConjugatePairEvent":
        if b.fingerprint() != a.fingerprint():
            raise InvariantViolation("fingerprint changed across a conjugate-pair event")
    elif ev.kind == "TangencyWall":
        if b.fingerprint() != a.fingerprint():
            raise InvariantViolation("point-count fingerprint changed across a tangency wall")
        if ev.line_counts is not None:
            (cb, rb), (ca, ra) = ev.line_counts
            if cb != ca:
                raise InvariantViolation("complex line-constrained total changed")


def _member_multiset_difference(rich: EnumReport, poor: EnumReport):
    """Multiset of member classes present in `rich` but not in `poor`."""
    from collections import Counter

    crich = Counter(m.singularity.value for m in rich.members if m.real)
    cpoor = Counter(m.singularity.value for m in poor.members if m.real)
    diff = crich - cpoor
    missing = cpoor - crich
    if missing:
        return None
    return list(diff.elements())


# ---------------------------------------------------------------------------
# chamber sampling
# ---------------------------------------------------------------------------


def sample_chambers(n: int, seed: int, bound: int = 20,
                    max_retries_factor: int = 60) -> Tuple[List[ChamberSample], Dict]:
    """n seeded generic samples with their chamber fingerprints."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    samples: List[ChamberSample] = []
    attempts = 0
    cap = max_retries_factor * n
    while len(samples) < n:
        attempts += 1
        if attempts > cap:
            raise SamplerExhausted(f"{attempts} attempts for {len(samples)}/{n} samples")
        cfg = random_point_config(rng, bound=bound)
        try:
            rep = enumerate_members(cfg)
        except (OnWall, DegenerateConfig):
            continue
        samples.append(ChamberSample(cfg, rep))
    aggregate = {
        "real_counts": sorted({s.report.real_count for s in samples}),
        "signed_counts": sorted({s.report.signed_count for s in samples}),
        "fingerprints": sorted({s.fingerprint for s in samples}),
    }
    return samples, aggregate
