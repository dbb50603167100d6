"""Evaluation-map rank certificates on explicit stable-map charts."""
import random

import pytest

from curvecount.curves import (
    PlaneCurve,
    SingularityClass,
    StableMapParam,
    classify_at_exact_point,
    singular_points,
    classify_singularity,
)
from curvecount.errors import InstabilityError, StepTooLarge
from curvecount.moduli import (
    DimLedger,
    ModuliChart,
    RankReport,
    ReducibleChart,
    dim_ledger,
    ev_jacobian,
    h0_twist_dim,
    immersion_rank_at_special,
    local_degree_probe,
    reducible_ev_jacobian,
)
from curvecount.qq import QQ, rat
from curvecount.unipoly import UniPoly


def poly(*coeffs):
    return UniPoly(coeffs, "t")


NODAL_PARAM = StableMapParam(poly(-1, 0, 1), poly(0, -1, 0, 1), poly(1))  # (t^2-1 : t^3-t : 1)
CUSP_PARAM = StableMapParam(poly(0, 0, 1), poly(0, 0, 0, 1), poly(1))  # (t^2 : t^3 : 1)
LINE_PARAM = StableMapParam(poly(0, 1), poly(1), poly(2, 3))  # degree-1 map
MARKS8 = [rat(x) for x in (2, 3, "1/2", -2, 5, "7/3", -4, "9/2")]
MARKS8_CUSP = [rat(x) for x in (1, 2, "1/2", -1, 3, "5/2", -3, "-1/2")]


class TestEvJacobian:
    def test_nodal_cubic_full_rank(self):
        rep = ev_jacobian(ModuliChart(NODAL_PARAM, MARKS8))
        assert rep.jacobian.nrows == 16 and rep.jacobian.ncols == 16
        assert rep.rank == 16
        assert rep.kernel_dim == 0
        assert rep.corank == 0

    def test_cuspidal_corank_one(self):
        rep = ev_jacobian(ModuliChart(CUSP_PARAM, MARKS8_CUSP))
        assert rep.jacobian.nrows == 16 and rep.jacobian.ncols == 16
        assert rep.rank == 15
        assert rep.corank == 1
        assert rep.kernel_dim == 1

    def test_line_two_marks(self):
        rep = ev_jacobian(ModuliChart(LINE_PARAM, [rat(1), rat(-1)]))
        assert rep.jacobian.ncols == 3 * 1 - 1 + 2 == 4
        assert rep.rank == 4

    def test_rank_invariance_under_mark_permutation(self):
        rng = random.Random(4)
        base = list(MARKS8)
        r0 = ev_jacobian(ModuliChart(NODAL_PARAM, base)).rank
        for _ in range(4):
            rng.shuffle(base)
            assert ev_jacobian(ModuliChart(NODAL_PARAM, base)).rank == r0

    def test_rank_invariance_under_target_projectivity(self):
        # apply an exact projective change to the target: ranks must agree
        m = [[1, 2, 0], [0, 1, 1], [1, 0, 3]]

        def apply(param):
            fx, fy, fz = param.fx, param.fy, param.fz
            gx = m[0][0] * fx + m[0][1] * fy + m[0][2] * fz
            gy = m[1][0] * fx + m[1][1] * fy + m[1][2] * fz
            gz = m[2][0] * fx + m[2][1] * fy + m[2][2] * fz
            return StableMapParam(gx, gy, gz)

        for param, marks, want in (
            (NODAL_PARAM, MARKS8, 16),
            (CUSP_PARAM, MARKS8_CUSP, 15),
        ):
            assert ev_jacobian(ModuliChart(apply(param), marks)).rank == want

    def test_rank_kernel_identity(self):
        for param, marks in ((NODAL_PARAM, MARKS8), (CUSP_PARAM, MARKS8_CUSP)):
            rep = ev_jacobian(ModuliChart(param, marks))
            assert rep.rank + rep.kernel_dim == rep.jacobian.ncols


class TestH0Twist:
    def test_nodal_immersion_vanishes(self):
        assert h0_twist_dim(ModuliChart(NODAL_PARAM, MARKS8)) == 0

    def test_cuspidal_skyscraper(self):
        assert h0_twist_dim(ModuliChart(CUSP_PARAM, MARKS8_CUSP)) == 1

    def test_line_immersion(self):
        assert h0_twist_dim(ModuliChart(LINE_PARAM, [rat(1), rat(-1)])) == 0

    def test_matches_ev_kernel(self):
        # Lemma-level identity: ker(dev) dimension equals h0 of the twist
        for param, marks in ((NODAL_PARAM, MARKS8), (CUSP_PARAM, MARKS8_CUSP)):
            chart = ModuliChart(param, marks)
            assert ev_jacobian(chart).kernel_dim == h0_twist_dim(chart)


class TestDimLedger:
    def test_irreducible_formulas(self):
        for d in (1, 2, 3, 4):
            for k in range(2, 12):
                led = dim_ledger(d, k)
                assert led.chart_dim == 3 * d - 1 + k
                assert led.anticanonical_degree == 3 * d
                if k == 3 * d - 1:
                    assert led.chart_dim == 2 * k  # square chart

    def test_reducible_formula(self):
        led = dim_ledger(3, split=(1, 2, 3, 5))
        assert led.chart_dim == 3 * 3 - 1 + 8

    def test_instability(self):
        with pytest.raises(InstabilityError):
            dim_ledger(3, split=(3, 0, 7, 1))

    def test_measured_chart_dims_match(self):
        # d=1..3 instances measured against the ledger
        cases = [
            (LINE_PARAM, [rat(1), rat(-1)]),
            (NODAL_PARAM, MARKS8),
            (CUSP_PARAM, MARKS8_CUSP),
        ]
        for param, marks in cases:
            chart = ModuliChart(param, marks)
            led = dim_ledger(param.degree, len(marks))
            assert ev_jacobian(chart).jacobian.ncols == led.chart_dim


def conic_param():
    # smooth conic (t : t^2 : 1), an immersion of degree 2
    return StableMapParam(poly(0, 1), poly(0, 0, 1), poly(1))


def conic_param_through(pt):
    # conic parametrization passing through a chosen rational point at t=0:
    # translate the standard parabola
    x0, y0 = pt
    return StableMapParam(poly(x0, 1), poly(y0, 0, 1), poly(1))


YAXIS = StableMapParam(poly(0), poly(0, 1), poly(1))  # x = 0
DIAG = StableMapParam(poly(0, 1), poly(0, 2), poly(1))  # y = 2x
CONIC = StableMapParam(poly(0, 1), poly(0, 0, 1), poly(1))  # (t : t^2 : 1)


class TestReducible:
    # Gluings below are transverse at the node (a tangential gluing is a
    # deeper degeneration and inflates every corank by one).

    def test_case_iv_regular(self):
        # both components carry their regular count 3d_i - 1 of marks
        chart = ReducibleChart(YAXIS, DIAG, 0, 0, [1, 2], [1, -1])
        rep = reducible_ev_jacobian(chart)
        assert rep.jacobian.ncols == chart.chart_dim == 9
        assert rep.jacobian.nrows == 8
        assert rep.corank == 0
        # d = 3 as 1+2 with (r, s) = (3d1-1, 3d2-1) is regular as well
        chart = ReducibleChart(YAXIS, CONIC, 0, 0, [1, 2], [1, -1, 2, 3, -2])
        assert reducible_ev_jacobian(chart).corank == 0

    def test_case_iii_corank_one(self):
        # one component carries exactly one mark beyond its regular count
        # (k = 3d-1 total, the enumerative setting): corank exactly one
        chart = ReducibleChart(YAXIS, CONIC, 0, 0, [1, 2], [1, -1, 2, 3, -2, 4])
        rep = reducible_ev_jacobian(chart)
        assert rep.jacobian.ncols == chart.chart_dim == 16
        assert rep.corank == 1
        chart = ReducibleChart(YAXIS, CONIC, 0, 0, [1, 2, 3], [1, -1, 2, 3, -2])
        assert reducible_ev_jacobian(chart).corank == 1

    def test_case_i_constant_component(self):
        # d = 3 as 3+0: degree-0 component with 2 marks: corank > 1
        cubic = NODAL_PARAM
        pt = cubic(2)  # constant component at a point of the cubic
        const = StableMapParam(poly(pt[0]), poly(pt[1]), poly(pt[2]))
        chart = ReducibleChart(cubic, const, 2, 0, [3, -1, 4, 5, -2, 6], [1, -1])
        rep = reducible_ev_jacobian(chart)
        assert rep.corank > 1

    def test_case_ii_excess_marks_measured(self):
        # mark excess beyond one: measured coranks, recorded not asserted;
        # the observed law is corank = sum_i max(0, marks_i - (3 d_i - 1))
        cases = [
            ((1, 7), 2),
            ((2, 7), 2),
            ((4, 4), 2),
            ((4, 7), 4),
        ]
        pool = [rat(x) for x in (2, 3, -2, 5, "1/2", -3, 7, "7/2", -5, 9, "9/2")]
        for (r, s), measured in cases:
            chart = ReducibleChart(YAXIS, CONIC, 0, 0, pool[:r], pool[r : r + s])
            rep = reducible_ev_jacobian(chart)
            assert rep.corank == measured
            assert rep.corank > 1

    def test_spec_example_r1_s4_measured(self):
        # the (r, s) = (3d1-2, 3d2-2) split: exact rank says the evaluation
        # map is regular here (kernel 3: one section per component plus the
        # smoothing line, minus the two gluing conditions)
        chart = ReducibleChart(YAXIS, CONIC, 0, 0, [5], [1, 2, -1, 3])
        rep = reducible_ev_jacobian(chart)
        assert rep.corank == 0
        assert rep.kernel_dim == 3

    def test_instability_raises(self):
        cubic = NODAL_PARAM
        pt = cubic(2)
        const = StableMapParam(poly(pt[0]), poly(pt[1]), poly(pt[2]))
        with pytest.raises(InstabilityError):
            ReducibleChart(cubic, const, 2, 0, [3, -1, 4, 5, -2, 6, 7], [1])

    def test_tangential_gluing_detected_as_deeper(self):
        # the y=0 line is tangent to the parabola at the node: corank jumps
        tangent_line = StableMapParam(poly(0, 1), poly(0), poly(1))
        chart = ReducibleChart(tangent_line, CONIC, 0, 0, [1, 2], [1, -1, 2, 3, -2])
        assert reducible_ev_jacobian(chart).corank == 1  # regular split, +1 from tangency


def tacnodal_quartic_param():
    """Degree-4 immersion whose image has one tacnode plus one node.

    Branches at t=0 and t=infinity pass through the origin with a common
    tangent (4,3) and distinct second jets; found by exact search, verified
    exactly in the test body.
    """
    fx = poly(0, 4, 4, 12)         # 4t + 4t^2 + 12t^3
    fy = poly(0, 3, 1, 9)          # 3t + t^2 + 9t^3
    fz = poly(1, 0, -3, 0, 1)      # 1 - 3t^2 + t^4
    return StableMapParam(fx, fy, fz)


def triple_point_quartic_param():
    """Degree-4 immersion with an ordinary triple point at the origin."""
    # components vanish at t in {0, 1, -1}: f = t(t^2-1) * (linear)
    fx = poly(0, -1, 0, 1) * poly(1, 1)      # t(t^2-1)(1 + t)
    fy = poly(0, -1, 0, 1) * poly(2, -1)     # t(t^2-1)(2 - t)
    fz = poly(1, 0, 1, 0, 1)                 # 1 + t^2 + t^4
    return StableMapParam(fx, fy, fz)


MARKS11 = [rat(x) for x in (2, 3, -2, 4, "1/2", -3, 5, "5/2", -4, "7/2", 6)]


class TestSpecialImmersions:
    def test_tacnodal_quartic_classified(self):
        param = tacnodal_quartic_param()
        assert param.degree == 4
        assert param.is_immersion()
        image = param.implicitize()
        assert image.degree == 4
        klass = classify_at_exact_point(PlaneCurve(image), (0, 0, 1))
        assert klass == SingularityClass.TACNODE

    def test_triple_point_quartic_classified(self):
        param = triple_point_quartic_param()
        assert param.degree == 4
        assert param.is_immersion()
        image = param.implicitize()
        assert image.degree == 4
        klass = classify_at_exact_point(PlaneCurve(image), (0, 0, 1))
        assert klass == SingularityClass.TRIPLE_POINT

    def test_tacnodal_rank_full(self):
        rep = immersion_rank_at_special(tacnodal_quartic_param(), MARKS11)
        assert rep.jacobian.nrows == 22 and rep.jacobian.ncols == 22
        assert rep.rank == 22

    def test_triple_point_rank_full(self):
        rep = immersion_rank_at_special(triple_point_quartic_param(), MARKS11)
        assert rep.rank == 22

    def test_nodal_cubic_sanity(self):
        rep = immersion_rank_at_special(NODAL_PARAM, MARKS8)
        assert rep.rank == 16


class TestLocalDegreeProbe:
    def test_nodal_chart_rejected(self):
        with pytest.raises(ValueError):
            local_degree_probe(ModuliChart(NODAL_PARAM, MARKS8))

    def test_cusp_probe_two_then_none(self):
        chart = ModuliChart(CUSP_PARAM, MARKS8_CUSP)
        plus, minus = local_degree_probe(chart)
        assert sorted((plus, minus)) == [0, 2]

    def test_stable_under_step_halving(self):
        chart = ModuliChart(CUSP_PARAM, MARKS8_CUSP)
        base = local_degree_probe(chart)
        images = [chart.param(a) for a in chart.marks]
        affine = [(p[0] / p[2], p[1] / p[2]) for p in images]
        dmin = min(
            max(abs(a[0] - b[0]), abs(a[1] - b[1]))
            for i, a in enumerate(affine)
            for b in affine[i + 1 :]
        )
        step = dmin / 1024
        assert local_degree_probe(chart, step=step / 2) == base
        assert local_degree_probe(chart, step=step / 4) == base
