"""Evaluation-map Jacobians on explicit stable-map charts.

Rank, corank and kernel dimensions are exact; the gauge directions
(reparametrization and rescaling) are constructed explicitly and verified to
lie in the kernel of the full differential before the chart is cut down to
its 3d-1+k free coordinates.
"""
from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .curves import StableMapParam
from .errors import ChartBreakdown, InstabilityError, StepTooLarge, UnsupportedDegree
from .linalg import RatMatrix, exact_rank, left_nullspace, nullspace
from .qq import QQ, Rat, RatInterval, rat
from .unipoly import UniPoly


class ModuliChart:
    """A stable map with marks, gauge-fixed to 3d-1+k free directions."""

    __slots__ = ("param", "marks")

    def __init__(self, param: StableMapParam, marks: Sequence[Rat]):
        self.param = param.with_marks(marks)
        self.marks = self.param.marks

    @property
    def degree(self) -> int:
        return self.param.degree

    @property
    def k(self) -> int:
        return len(self.marks)

    @property
    def chart_dim(self) -> int:
        return 3 * self.degree - 1 + self.k


class RankReport:
    __slots__ = ("jacobian", "rank", "corank", "kernel_dim")

    def __init__(self, jacobian: RatMatrix):
        self.jacobian = jacobian
        self.rank = exact_rank(jacobian)
        self.corank = jacobian.nrows - self.rank
        self.kernel_dim = jacobian.ncols - self.rank

    def __repr__(self):
        return (
            f"RankReport({self.jacobian.nrows}x{self.jacobian.ncols}, "
            f"rank={self.rank}, corank={self.corank}, ker={self.kernel_dim})"
        )


class DimLedger:
    """Expected dimensions from the tangent-space splitting formulas."""

    __slots__ = ("degree", "marks", "anticanonical_degree", "chart_dim", "expected_full_rank")

    def __init__(self, degree: int, marks: int):
        self.degree = degree
        self.marks = marks
        self.anticanonical_degree = 3 * degree
        self.chart_dim = 3 * degree - 1 + marks
        self.expected_full_rank = min(2 * marks, self.chart_dim)

    def __repr__(self):
        return f"DimLedger(d={self.degree}, k={self.marks}, chart={self.chart_dim})"


def dim_ledger(d: int, k: Optional[int] = None,
               split: Optional[Tuple[int, int, int, int]] = None) -> DimLedger:
    """Chart dimension ledger; reducible splits get the glued-curve formula."""
    if split is not None:
        d1, d2, r, s = split
        if d1 + d2 != d:
            raise ValueError("component degrees must sum to d")
        for deg_i, marks_i in ((d1, r), (d2, s)):
            if deg_i == 0 and marks_i < 2:
                raise InstabilityError("degree-0 component needs >= 2 marks plus the node")
        if d1 < 0 or d2 < 0 or (d1 == 0 and d2 == 0):
            raise InstabilityError("invalid component degrees")
        ledger = DimLedger(d, r + s)
        return ledger
    if d < 1:
        raise InstabilityError("irreducible charts need degree >= 1")
    return DimLedger(d, k)


# ---------------------------------------------------------------------------
# single-component charts
# ---------------------------------------------------------------------------


def _coeff_lists(param: StableMapParam, d: int) -> List[List]:
    out = []
    for f in (param.fx, param.fy, param.fz):
        c = list(f.coeffs) + [QQ(0)] * (d + 1 - len(f.coeffs))
        out.append(c)
    return out


def _target_chart(point) -> int:
    """Index of the affine chart (coordinate kept at 1) for a target point."""
    for axis in (2, 1, 0):
        if point[axis] != 0:
            return axis
    raise ChartBreakdown("mark maps to (0:0:0)")


def _affine_coords(point, chart: int) -> Tuple:
    others = [i for i in range(3) if i != chart]
    return tuple(point[i] / point[chart] for i in others)


def _ev_rows_for_mark(param: StableMapParam, d: int, a: Rat, n_coeff_cols: int,
                      mark_col: int, ncols: int) -> List[List]:
    """Two exact Jacobian rows of the evaluation at one mark."""
    comps = (param.fx, param.fy, param.fz)
    vals = [f(a) for f in comps]
    chart = _target_chart(vals)
    others = [i for i in range(3) if i != chart]
    w = vals[chart]
    powers = [a ** j for j in range(d + 1)]
    rows = []
    dvals = [f.derivative()(a) for f in comps]
    for out_i in others:
        row = [QQ(0)] * ncols
        # d(f_i/f_chart)/dc: numerator coefficients contribute a^j / w,
        # denominator coefficients contribute -f_i a^j / w^2
        for j in range(d + 1):
            row[out_i * (d + 1) + j] += powers[j] / w
            row[chart * (d + 1) + j] += -vals[out_i] * powers[j] / (w * w)
        row[mark_col] = (dvals[out_i] * w - vals[out_i] * dvals[chart]) / (w * w)
        rows.append(row)
    return rows


def _gauge_columns(param: StableMapParam, d: int, marks: Sequence[Rat]) -> List[List]:
    """Scaling plus the three reparametrization fields, as exact columns.

    Columns live in coefficient-space + mark-space; each is verified by the
    caller to lie in the kernel of the full ev Jacobian.
    """
    coeffs = _coeff_lists(param, d)
    k = len(marks)
    n = 3 * (d + 1)
    cols = []
    # scaling: f -> e^eps f, marks fixed
    col = [coeffs[c][j] for c in range(3) for j in range(d + 1)] + [QQ(0)] * k
    cols.append(col)
    # w(t) = 1: f -> f(t - eps), a -> a + eps
    col = []
    for c in range(3):
        for j in range(d + 1):
            col.append(-(j + 1) * coeffs[c][j + 1] if j + 1 <= d else QQ(0))
    col += [QQ(1)] * k
    cols.append(col)
    # w(t) = t: f -> f(e^-eps t), a -> e^eps a
    col = []
    for c in range(3):
        for j in range(d + 1):
            col.append(QQ(-j) * coeffs[c][j])
    col += [rat(a) for a in marks]
    cols.append(col)
    # w(t) = t^2 (projective form: d*t*f - t^2 f'), a -> a/(1            - eps a)
    col = []
    for c in range(3):
        for j in range(d + 1):
            col.append((d - j + 1) * coeffs[c][j - 1] if j - 1 >= 0 else QQ(0))
    col += [rat(a) * rat(a) for a in marks]
    cols.append(col)
    return cols


def _chart_column_selection(gauge_cols: List[List], n_total: int,
                            preferred_drop: List[int]) -> List[int]:
    """Coordinates to keep: all but 4 pivot rows of the gauge span.

    Removing pivot rows of the orbit leaves coordinates whose span, together
    with the orbit, is everything; the ev rank is then preserved on the
    chart (the orbit itself sits inside the kernel).
    """
    order = preferred_drop + [i for i in range(n_total) if i not in preferred_drop]
    mat = RatMatrix([[col[i] for col in gauge_cols] for i in order])
    dropped = []
    rank = 0
    rows_so_far: List[List] = []
    for pos, i in enumerate(order):
        cand = rows_so_far + [list(mat.rows[pos])]
        if exact_rank(RatMatrix(cand)) > rank:
            rows_so_far = cand
            rank += 1
            dropped.append(i)
            if rank == len(gauge_cols):
                break
    if rank != len(gauge_cols):
        raise ChartBreakdown("gauge orbit is degenerate on this chart")
    return [i for i in range(n_total) if i not in dropped]


def ev_jacobian(chart: ModuliChart) -> RankReport:
    """Exact Jacobian of the evaluation map on the gauge-fixed chart."""
    param, marks = chart.param, chart.marks
    d = chart.degree
    k = chart.k
    n_coeff = 3 * (d + 1)
    ncols = n_coeff + k
    rows = []
    for i, a in enumerate(marks):
        rows.extend(_ev_rows_for_mark(param, d, a, n_coeff, n_coeff + i, ncols))
    J_full = RatMatrix(rows)
    gauge = _gauge_columns(param, d, marks)
    for col in gauge:
        image = J_full.mul_vector(col)
        if any(v != 0 for v in image):
            raise AssertionError("gauge direction escapes the ev kernel")
    # prefer pinning the top coefficient of f_z, then other f_z directions
    prefer = [2 * (d + 1) + d] + [2 * (d + 1) + j for j in range(d, -1, -1)]
    prefer += list(range(n_coeff))
    seen = set()
    prefer = [x for x in prefer if not (x in seen or seen.add(x))]
    keep = _chart_column_selection(gauge, ncols, prefer)
    if len(keep) != chart.chart_dim:
        raise AssertionError("chart dimension mismatch")
    J_chart = RatMatrix([[row[j] for j in keep] for row in rows])
    report = RankReport(J_chart)
    if report.rank != exact_rank(J_full):
        raise AssertionError("chart restriction changed the rank")
    return report


def h0_twist_dim(chart: ModuliChart) -> int:
    """dim of normal-sheaf sections vanishing at all marks, independently of
    the ev Jacobian: kernel of the normal-projection rows minus the four
    trivial directions (rescaling and reparametrization)."""
    param, marks = chart.param, chart.marks
    d = chart.degree
    if chart.k != 3 * d - 1:
        raise ValueError("h0_twist_dim is defined for k = 3d-1 marks")
    comps = (param.fx, param.fy, param.fz)
    rows = []
    for a in marks:
        v = [f(a) for f in comps]
        dv = [f.derivative()(a) for f in comps]
        w = (
            v[1] * dv[2] - v[2] * dv[1],
            v[2] * dv[0] - v[0] * dv[2],
            v[0] * dv[1] - v[1] * dv[0],
        )
        if all(x == 0 for x in w):
            raise ChartBreakdown("mark sits at a critical point of the map")
        powers = [a ** j for j in range(d + 1)]
        row = []
        for c in range(3):
            for j in range(d + 1):
                row.append(w[c] * powers[j])
        rows.append(row)
    mat = RatMatrix(rows)
    ker = mat.ncols - exact_rank(mat)
    # the four trivial kernel directions: f, f', t f', d t f - t^2 f'
    coeffs = _coeff_lists(param, d)
    triv = []
    triv.append([coeffs[c][j] for c in range(3) for j in range(d + 1)])
    triv.append([(j + 1) * coeffs[c][j + 1] if j + 1 <= d else QQ(0) for c in range(3) for j in range(d + 1)])
    triv.append([QQ(j) * coeffs[c][j] for c in range(3) for j in range(d + 1)])
    triv.append([(d - j + 1) * coeffs[c][j - 1] if j - 1 >= 0 else QQ(0) for c in range(3) for j in range(d + 1)])
    for v in triv:
        image = mat.mul_vector(v)
        if any(x != 0 for x in image):
            raise AssertionError("trivial normal direction not in the kernel")
    triv_rank = exact_rank(RatMatrix(triv))
    return ker - triv_rank


# ---------------------------------------------------------------------------
# reducible charts
# ---------------------------------------------------------------------------


class ReducibleChart:
    """Two glued components with a mark split and one smoothing direction."""

    __slots__ = ("comp1", "comp2", "q1", "q2", "marks1", "marks2")

    def __init__(self, comp1: StableMapParam, comp2: StableMapParam,
                 q1: Rat, q2: Rat, marks1: Sequence[Rat], marks2: Sequence[Rat]):
        self.comp1 = comp1
        self.comp2 = comp2
        self.q1 = rat(q1)
        self.q2 = rat(q2)
        self.marks1 = tuple(rat(m) for m in marks1)
        self.marks2 = tuple(rat(m) for m in marks2)
        for deg, marks in ((comp1.degree, self.marks1), (comp2.degree, self.marks2)):
            if deg == 0 and len(marks) < 2:
                raise InstabilityError("degree-0 component needs >= 2 marks plus the node")
        if self.q1 in self.marks1 or self.q2 in self.marks2:
            raise ValueError("gluing point coincides with a mark")
        p1 = comp1(self.q1)
        p2 = comp2(self.q2)
        for i in range(3):
            for j in range(i + 1, 3):
                if p1[i] * p2[j] != p1[j] * p2[i]:
                    raise ValueError("gluing constraint f1(q1) = f2(q2) violated")

    @property
    def degree(self) -> int:
        return self.comp1.degree + self.comp2.degree

    @property
    def k(self) -> int:
        return len(self.marks1) + len(self.marks2)

    @property
    def chart_dim(self) -> int:
        return 3 * self.degree - 1 + self.k


def reducible_ev_jacobian(chart: ReducibleChart) -> RankReport:
    """Exact ev Jacobian on the glued chart, smoothing direction included.

    Layout of full coordinates: comp1 coefficients, comp2 coefficients,
    comp1 marks, comp2 marks, q1, q2.  The gluing constraint removes two
    directions, the two gauges (scaling + reparametrization per component)
    remove eight, and the smoothing line adds one zero column (its
    first-order effect on mark images vanishes).
    """
    c1, c2 = chart.comp1, chart.comp2
    d1, d2 = c1.degree, c2.degree
    n1, n2 = 3 * (d1 + 1), 3 * (d2 + 1)
    r, s = len(chart.marks1), len(chart.marks2)
    N = n1 + n2 + r + s + 2
    iq1, iq2 = N - 2, N - 1

    rows = []
    for idx, a in enumerate(chart.marks1):
        sub = _ev_rows_for_mark(c1, d1, a, n1, n1, n1 + 1)
        for rrow in sub:
            row = [QQ(0)] * N
            row[:n1] = rrow[:n1]
            row[n1 + n2 + idx] = rrow[n1]
            rows.append(row)
    for idx, a in enumerate(chart.marks2):
        sub = _ev_rows_for_mark(c2, d2, a, n2, n2, n2 + 1)
        for rrow in sub:
            row = [QQ(0)] * N
            row[n1 : n1 + n2] = rrow[:n2]
            row[n1 + n2 + r + idx] = rrow[n2]
            rows.append(row)
    J_full = RatMatrix(rows)

    # gluing constraint differential (image equality in an affine chart)
    con_rows = []
    sub1 = _ev_rows_for_mark(c1, d1, chart.q1, n1, n1, n1 + 1)
    sub2 = _ev_rows_for_mark(c2, d2, chart.q2, n2, n2, n2 + 1)
    # the same affine chart must be used on both sides
    ch1 = _target_chart([f(chart.q1) for f in (c1.fx, c1.fy, c1.fz)])
    ch2 = _target_chart([f(chart.q2) for f in (c2.fx, c2.fy, c2.fz)])
    if ch1 != ch2:
        # recompute the lower-priority side in the other side's chart
        raise ChartBreakdown("gluing image straddles affine charts; move the example")
    for rrow1, rrow2 in zip(sub1, sub2):
        row = [QQ(0)] * N
        row[:n1] = rrow1[:n1]
        row[iq1] = rrow1[n1]
        for j in range(n2):
            row[n1 + j] = -rrow2[j]
        row[iq2] = -rrow2[n2]
        con_rows.append(row)
    C = RatMatrix(con_rows)

    # gauge columns per component (acting on coefficients, own marks, own q)
    gauge = []
    g1 = _gauge_columns(c1, d1, list(chart.marks1) + [chart.q1])
    for col in g1:
        full = [QQ(0)] * N
        full[:n1] = col[:n1]
        for idx in range(r):
            full[n1 + n2 + idx] = col[n1 + idx]
        full[iq1] = col[n1 + r]
        gauge.append(full)
    g2 = _gauge_columns(c2, d2, list(chart.marks2) + [chart.q2])
    for col in g2:
        full = [QQ(0)] * N
        full[n1 : n1 + n2] = col[:n2]
        for idx in range(s):
            full[n1 + n2 + r + idx] = col[n2 + idx]
        full[iq2] = col[n2 + s]
        gauge.append(full)
    for col in gauge:
        if any(v != 0 for v in J_full.mul_vector(col)):
            raise AssertionError("gauge direction escapes the ev kernel")
        if any(v != 0 for v in C.mul_vector(col)):
            raise AssertionError("gauge direction violates the gluing constraint")
    orbit_rank = exact_rank(RatMatrix(gauge))
    if orbit_rank != 8:
        raise InstabilityError("gauge orbit rank %d != 8 (unstable chart)" % orbit_rank)

    # chart basis: kernel of C, minus the orbit, plus the smoothing column
    kerC = nullspace(C)
    chosen: List[List] = []
    base = [list(col) for col in gauge]
    rank = orbit_rank
    for v in kerC:
        cand = base + chosen + [[QQ(int(x)) for x in v]]
        if exact_rank(RatMatrix(cand)) > rank + len(chosen):
            chosen.append([QQ(int(x)) for x in v])
    expected = chart.chart_dim - 1  # smoothing direction comes on top
    if len(chosen) != expected:
        raise AssertionError(
            f"chart basis has {len(chosen)} directions, expected {expected}"
        )
    cols = []
    for v in chosen:
        cols.append(J_full.mul_vector(v))
    # smoothing direction: first-order ev effect vanishes
    cols.append([QQ(0)] * (2 * (r + s)))
    J_chart = RatMatrix(list(map(list, zip(*cols)))) if cols else RatMatrix([])
    return RankReport(J_chart)


# ---------------------------------------------------------------------------
# local degree probe at a cuspidal chart
# ---------------------------------------------------------------------------


def cusp_parameter(param: StableMapParam) -> Rat:
    """The domain parameter where the differential vanishes (rational case)."""
    from .unipoly import poly_gcd, rational_roots

    dx, dy, dz = (f.derivative() for f in (param.fx, param.fy, param.fz))
    w1 = param.fx * dy - param.fy * dx
    w2 = param.fx * dz - param.fz * dx
    w3 = param.fy * dz - param.fz * dy
    g = poly_gcd(poly_gcd(w1, w2), w3)
    roots = rational_roots(g)
    if len(roots) != 1:
        raise ValueError("expected exactly one rational critical parameter")
    return roots[0][0]


def local_degree_probe(chart: ModuliChart, step: Optional[Rat] = None,
                       direction: Optional[Sequence[Rat]] = None) -> Tuple[int, int]:
    """Counts of nearby real solutions after a +-step cokernel perturbation.

    Realized through the pencil pipeline: the perturbed mark images are two
    exact point configurations whose singular members near the cusp image are
    counted inside an exact localization box.  Returns (plus, minus).
    """
    from .pencil import PointConfig, enumerate_members

    d = chart.degree
    if d != 3:
        raise UnsupportedDegree("local-degree probes are realized by the cubic pencil")
    report = ev_jacobian(chart)
    if report.corank != 1:
        raise ValueError("probe needs a corank-1 chart (cuspidal stable map)")
    if direction is None:
        covs = left_nullspace(report.jacobian)
        if len(covs) != 1:
            raise ValueError("cokernel direction is not one-dimensional")
        w = [QQ(int(x)) for x in covs[0]]
        wmax = max(abs(x) for x in w)
        w = [x / wmax for x in w]
    else:
        w = [rat(x) for x in direction]
        # a genuine cokernel covector annihilates every column
        chk = [sum((w[i] * report.jacobian[i, j] for i in range(report.jacobian.nrows)), QQ(0))
               for j in range(report.jacobian.ncols)]
        if any(v != 0 for v in chk):
            raise ValueError("direction is not a cokernel covector")
    marks = chart.marks
    images = [chart.param(a) for a in marks]
    charts_used = [_target_chart(p) for p in images]
    if any(c != 2 for c in charts_used):
        raise ChartBreakdown("probe expects mark images in the z = 1 chart")
    affine = [(p[0] / p[2], p[1] / p[2]) for p in images]
    if step is None:
        dmin = None
        for i in range(len(affine)):
            for j in range(i + 1, len(affine)):
                dx = affine[i][0] - affine[j][0]
                dy = affine[i][1] - affine[j][1]
                dist = max(abs(dx), abs(dy))
                dmin = dist if dmin is None or dist < dmin else dmin
        step = dmin / 1024
    step = rat(step)

    tau = cusp_parameter(chart.param)
    cusp_img = chart.param(tau)
    cx, cy = cusp_img[0] / cusp_img[2], cusp_img[1] / cusp_img[2]
    # localization box: half the distance to the nearest unperturbed mark
    rad = None
    for (px, py) in affine:
        dist = max(abs(px - cx), abs(py - cy))
        rad = dist if rad is None or dist < rad else rad
    rad = rad / 2
    box = (RatInterval(cx - rad, cx + rad), RatInterval(cy - rad, cy + rad))

    def count_side(sgn: int) -> int:
        pts = []
        for i, (px, py) in enumerate(affine):
            pts.append((px + sgn * step * w[2 * i], py + sgn * step * w[2 * i + 1], QQ(1)))
        cfg = PointConfig(pts)
        rep = enumerate_members(cfg)
        near = 0
        for m in rep.members:
            if not m.real or m.node is None:
                continue
            inside, outside = _box_position(m.node, box)
            if inside:
                near += m.multiplicity
            elif not outside:
                raise StepTooLarge("a singular member straddles the localization box")
        return near

    plus = count_side(+1)
    minus = count_side(-1)
    if {plus, minus} != {2, 0} and (plus, minus) != (2, 0) and (plus, minus) != (0, 2):
        raise StepTooLarge(f"branch counts ({plus}, {minus}) are not localized")
    return plus, minus


def _box_position(node, box) -> Tuple[bool, bool]:
    """(inside, outside): strict box membership for a node's certified coords."""
    coords = []
    for c in node:
        coords.append(c if isinstance(c, RatInterval) else RatInterval(c))
    zc = coords[2]
    if zc.contains_zero():
        return False, True  # node out at infinity: certainly outside the box
    x = coords[0] / zc
    y = coords[1] / zc
    bx, by = box
    inside = (bx.lo <= x.lo and x.hi <= bx.hi) and (by.lo <= y.lo and y.hi <= by.hi)
    outside = x.hi < bx.lo or x.lo > bx.hi or y.hi < by.lo or y.lo > by.hi
    return inside, outside


def immersion_rank_at_special(param: StableMapParam, marks: Sequence[Rat]) -> RankReport:
    """Rank at an immersed parametrization whose image has a tacnode or an
    ordinary triple point; expected full rank 6d-2 at k = 3d-1 marks."""
    if not param.is_immersion():
        raise ValueError("parametrization is not an immersion")
    chart = ModuliChart(param, marks)
    return ev_jacobian(chart)
