"""The degree-3 exact enumeration pipeline.

From 8 rational points to the full report: pencil basis by fraction-free
nullspace, degree-12 discriminant by evaluation-interpolation of the
Macaulay resultant, real root isolation, and per-member node classification
(exact rational fast path; subresultant lifts plus exact sign tests at
algebraic pencil parameters).
"""
from __future__ import annotations

import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .alg import AlgebraicNumber, RatFunc
from .curves import PlaneCurve, SingularityClass, classify_singularity, singular_points
from .errors import (
    DegenerateConfig,
    IdenticallySingularPencil,
    OnWall,
    PrecisionExhausted,
    UnsupportedDegree,
)
from .linalg import RatMatrix, exact_rank, nullspace
from .macaulay import cubic_disc_value
from .qq import QQ, ZZ, Rat, RatInterval, rat, sign
from .tripoly import MPoly, TriPoly, monomials_of_degree, subresultant_polynomial, sylvester_resultant_lists
from .unipoly import (
    IsolInterval,
    UniPoly,
    isolate_real_roots,
    lagrange_interpolate,
    poly_gcd,
    ring_subresultant_prs,
    squarefree_decomposition,
)

DEGREE = 3
N_POINTS = 3 * DEGREE - 1  # 8
N_CUBIC_MONOS = 10
DISC_DEGREE = 12


# ---------------------------------------------------------------------------
# configurations
# ---------------------------------------------------------------------------


class PointConfig:
    """Ordered 8-tuple of rational projective points, optional rational lines."""

    __slots__ = ("points", "lines", "degree", "seed")

    def __init__(self, points: Sequence[Sequence[Rat]], lines: Sequence[TriPoly] = (),
                 degree: int = DEGREE, seed: Optional[int] = None):
        self.points = tuple(_primitive_point(p) for p in points)
        self.lines = tuple(lines)
        self.degree = degree
        self.seed = seed

    def __repr__(self):
        return f"PointConfig({len(self.points)} points, {len(self.lines)} lines)"

    def replace_point(self, index: int, new_point: Sequence[Rat]) -> "PointConfig":
        pts = list(self.points)
        pts[index] = tuple(rat(c) for c in new_point)
        return PointConfig(pts, self.lines, self.degree, self.seed)


def _primitive_point(p: Sequence[Rat]) -> Tuple:
    import math

    vals = [rat(c) for c in p]
    if all(v == 0 for v in vals):
        raise ValueError("(0:0:0) is not a projective point")
    den = 1
    for v in vals:
        d = int(v.denominator)
        den = den // math.gcd(den, d) * d
    ints = [int(v.numerator) * (den // int(v.denominator)) for v in vals]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    lead = next(a for a in ints if a != 0)
    if lead < 0:
        g = -g
    return tuple(QQ(a // g) for a in ints)


def projectively_equal(p: Sequence[Rat], q: Sequence[Rat]) -> bool:
    p = [rat(c) for c in p]
    q = [rat(c) for c in q]
    for i in range(3):
        for j in range(i + 1, 3):
            if p[i] * q[j] != p[j] * q[i]:
                return False
    return True


def line_from_coeffs(coeffs: Sequence[Rat]) -> TriPoly:
    a, b, c = (rat(v) for v in coeffs)
    return TriPoly(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


def condition_matrix(cfg: PointConfig) -> RatMatrix:
    """8 x 10 matrix of cubic conditions (rank 8 is the genericity certificate)."""
    monos = monomials_of_degree(3)
    rows = []
    for p in cfg.points:
        x, y, z = p
        rows.append([x ** i * y ** j * z ** k for (i, j, k) in monos])
    return RatMatrix(rows)


def certify_config(cfg: PointConfig) -> None:
    """Pairwise distinctness plus full rank; raises DegenerateConfig."""
    if cfg.degree != DEGREE:
        raise UnsupportedDegree(
            "exact real enumeration is cubic-specific (d=3); use the recursion for complex counts"
        )
    if len(cfg.points) != N_POINTS:
        raise DegenerateConfig(f"need {N_POINTS} points, got {len(cfg.points)}")
    for i in range(N_POINTS):
        for j in range(i + 1, N_POINTS):
            if projectively_equal(cfg.points[i], cfg.points[j]):
                raise DegenerateConfig(f"points {i} and {j} coincide")
    if exact_rank(condition_matrix(cfg)) != N_POINTS:
        raise DegenerateConfig("cubic condition matrix has rank < 8")


class PencilBasis:
    """Exact basis (F0, F1) of the cubics through the configuration."""

    __slots__ = ("F0", "F1")

    def __init__(self, F0: TriPoly, F1: TriPoly):
        self.F0 = F0
        self.F1 = F1

    def member(self, t: Rat) -> TriPoly:
        return (self.F0 + self.F1.scale(rat(t))).content_cleared()

    def member_raw(self, t: Rat) -> TriPoly:
        return self.F0 + self.F1.scale(rat(t))


def cubic_system(cfg: PointConfig) -> PencilBasis:
    """Fraction-free nullspace of the condition matrix, checked exactly."""
    certify_config(cfg)
    basis_vecs = nullspace(condition_matrix(cfg))
    if len(basis_vecs) != 2:
        raise DegenerateConfig("pencil is not two-dimensional")
    F0 = TriPoly.from_coeff_vector(3, [QQ(int(c)) for c in basis_vecs[0]])
    F1 = TriPoly.from_coeff_vector(3, [QQ(int(c)) for c in basis_vecs[1]])
    for F in (F0, F1):
        for p in cfg.points:
            assert F.vanishes_at(p)
    return PencilBasis(F0.content_cleared(), F1.content_cleared())


# ---------------------------------------------------------------------------
# pencil discriminant
# ---------------------------------------------------------------------------


def pencil_discriminant(basis: PencilBasis) -> Tuple[UniPoly, int]:
    """(D(t), infinity multiplicity): disc of F0 + t F1 by interpolation.

    13 exact Macaulay values pin the degree-<=12 polynomial; a 14th value
    validates the degree bound.  The member at t = infinity (F1 itself)
    accounts for the remaining 12 - deg D roots.
    """
    nodes: List[int] = []
    values: List = []
    t = 0
    while len(nodes) < 14 and t < 200:
        for cand in (t, -t) if t else (0,):
            if cand in nodes or len(nodes) >= 14:
                continue
            F = basis.member_raw(cand)
            try:
                v = cubic_disc_value(F)
            except ArithmeticError:
                continue
            nodes.append(cand)
            values.append(QQ(int(v)))
        t += 1
    if len(nodes) < 14:
        raise ArithmeticError("could not collect enough discriminant evaluations")
    D = lagrange_interpolate(list(zip(nodes[:13], values[:13])), "t")
    if D(nodes[13]) != values[13]:
        raise AssertionError("pencil discriminant exceeded degree 12")
    if D.is_zero:
        raise IdenticallySingularPencil("every member of the pencil is singular")
    # integer-clear for downstream root isolation
    D = UniPoly.from_int_coeffs(D.primitive_int(), "t")
    inf_mult = DISC_DEGREE - D.degree
    return D, inf_mult


# ---------------------------------------------------------------------------
# member classification at algebraic pencil parameters
# ---------------------------------------------------------------------------


class _ChartFailure(Exception):
    pass


def _pencil_shears(max_count: int = 10):
    yield ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    rng = random.Random(0xBEEF)
    for _ in range(max_count - 1):
        m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        for _ in range(4):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-2, 2)
            for k in range(3):
                m[i][k] += c * m[j][k]
        yield tuple(tuple(row) for row in m)


_XYT = ("x", "y", "t")


def _xyt(mp0: MPoly, mp1: MPoly) -> MPoly:
    """Combine the t^0 and t^1 parts of a pencil chart polynomial."""
    terms = {}
    for (i, j), c in mp0.terms.items():
        terms[(i, j, 0)] = c
    for (i, j), c in mp1.terms.items():
        terms[(i, j, 1)] = terms.get((i, j, 1), QQ(0)) + c
    return MPoly(_XYT, terms)


def _prs_linear_element(lists: List[UniPoly], other: List[UniPoly]):
    """(c0, c1, resultant) from the subresultant chain in Q[t].

    c1 x + c0 is the degree-1 chain element; the final degree-0 element is a
    nonzero multiple of the resultant, which must vanish at a parameter for
    the two polynomials to share a root there.
    """
    ring = {
        "one": UniPoly.constant(1, "t"),
        "mul": lambda a, b: a * b,
        "sub": lambda a, b: a - b,
        "divexact": lambda a, b: a // b,
        "is_zero": lambda a: a.is_zero,
    }
    try:
        chain = ring_subresultant_prs(lists, other, ring)
    except (ValueError, ZeroDivisionError):
        return None
    linear = None
    res = None
    for el in chain:
        if len(el) == 2 and not el[1].is_zero:
            linear = el
        if len(el) == 1 and not el[0].is_zero:
            res = el[0]
    if linear is None or res is None:
        return None
    return linear[0], linear[1], res


def _tshift(p: UniPoly, k: int) -> UniPoly:
    if k == 0 or p.is_zero:
        return p
    return UniPoly((QQ(0),) * k + p.coeffs, "t")


def _compose_lift(mp: MPoly, xn: UniPoly, xd: UniPoly, yn: UniPoly, yd: UniPoly) -> Tuple[UniPoly, UniPoly]:
    """(numerator, denominator) of mp(x -> xn/xd, y -> yn/yd, t) in Q[t].

    The common denominator xd^a yd^b is cleared up front and the x/y power
    products are shared across terms, so only a handful of large polynomial
    multiplications happen.
    """
    a = max((k[0] for k in mp.terms), default=0)
    b = max((k[1] for k in mp.terms), default=0)
    one = UniPoly.constant(1, "t")
    xs = [one]
    ys = [one]
    for i in range(1, a + 1):
        xs.append(xs[-1] * xn)
    for j in range(1, b + 1):
        ys.append(ys[-1] * yn)
    # balance with the complementary denominator powers
    xdp = [one]
    ydp = [one]
    for i in range(1, a + 1):
        xdp.append(xdp[-1] * xd)
    for j in range(1, b + 1):
        ydp.append(ydp[-1] * yd)
    xfull = [xs[i] * xdp[a - i] for i in range(a + 1)]
    yfull = [ys[j] * ydp[b - j] for j in range(b + 1)]
    cross: Dict[Tuple[int, int], UniPoly] = {}
    num = UniPoly.zero("t")
    for (i, j, k), c in mp.terms.items():
        key = (i, j)
        if key not in cross:
            cross[key] = xfull[i] * yfull[j]
        num = num + _tshift(cross[key] * c, k)
    den = xdp[a] * ydp[b]
    return num, den


def _reduced_pair(c0: UniPoly, c1: UniPoly) -> Tuple[UniPoly, UniPoly]:
    """Strip common polynomial factor and content, preserving the ratio."""
    import math

    from .unipoly import zz_gcd_certainly_trivial

    if not zz_gcd_certainly_trivial(c0.primitive_int(), c1.primitive_int()):
        g = poly_gcd(c0, c1)
        if g.degree > 0:
            c0, c1 = c0 // g, c1 // g
    den = 1
    for c in (*c0.coeffs, *c1.coeffs):
        d = int(c.denominator)
        den = den // math.gcd(den, d) * d
    nums = [int(c.numerator) * (den // int(c.denominator)) for c in (*c0.coeffs, *c1.coeffs)]
    gg = 0
    for a in nums:
        gg = math.gcd(gg, a)
    scale = QQ(den, gg or 1)
    return c0 * scale, c1 * scale


def _rational_remainder_is_zero(v: UniPoly, D: UniPoly) -> bool:
    """Exact test D | v over Q (one-time per chart, certifies zero values
    at every root of D at once)."""
    if v.is_zero:
        return True
    if v.degree < D.degree:
        return False
    _, r = v.divmod(D)
    return r.is_zero


class _RootMembership:
    """Zero test of one fixed polynomial at roots of D, amortized.

    If D divides the polynomial the test is constant-time True; otherwise the
    exact gcd is taken once and per-root membership is a Sturm count.
    """

    def __init__(self, v: UniPoly, D: UniPoly):
        self.always = _rational_remainder_is_zero(v, D)
        self._chain = None
        if not self.always:
            g = UniPoly.from_int_coeffs(
                zz_gcd(D.primitive_int(), v.primitive_int()), "t"
            )
            self.gcd = g
            if g.degree > 0:
                from .unipoly import sturm_chain

                self._chain = sturm_chain(g.primitive_int())

    def holds_at(self, alpha: AlgebraicNumber) -> bool:
        if self.always:
            return True
        if self._chain is None:
            return False
        if alpha.is_rational:
            return self.gcd(alpha.rational_value()) == 0
        from .unipoly import sturm_count

        return (
            sturm_count(self._chain, alpha.interval.lower, alpha.interval.upper) == 1
        )


class _PencilChart:
    """Per-configuration symbolic data for classifying algebraic members.

    The singular point of the member at t = alpha is lifted through degree-1
    subresultants of the chart eliminations; validity at alpha is certified
    by (a) elimination leading coefficients nonzero (degrees specialize),
    (b) the eliminations' resultants vanishing (a common root exists), and
    (c) the subresultant denominators nonzero (the gcd has degree exactly 1,
    so the unique common root is the member's unique singular point).
    """

    def __init__(self, basis: PencilBasis, shear):
        self.shear = shear
        F0s = basis.F0.transform(shear)
        F1s = basis.F1.transform(shear)
        self.F0s, self.F1s = F0s, F1s
        g0, g1 = F0s.dehomogenize(2), F1s.dehomogenize(2)
        g = _xyt(g0, g1)
        self.gx = g.partial("x")
        self.gy = g.partial("y")
        self.h = _xyt(F0s.partial(2).dehomogenize(2), F1s.partial(2).dehomogenize(2))
        eqs = (self.gx, self.gy, self.h)

        def elim(var_out: str):
            """[(resultant, lc_a, lc_b)] over equation pairs, var_out gone."""
            out = []
            zero = MPoly.zero(tuple(v for v in _XYT if v != var_out))
            for a, b in ((0, 1), (0, 2), (1, 2)):
                la = eqs[a].as_poly_in(var_out)
                lb = eqs[b].as_poly_in(var_out)
                if len(la) < 2 or len(lb) < 2:
                    continue
                try:
                    r = sylvester_resultant_lists(la, lb, zero)
                except Exception:
                    continue
                if not r.is_zero:
                    out.append(r)
            return out

        xl = self._lift(elim("y"), "x")
        yl = self._lift(elim("x"), "y")
        if xl is None or yl is None:
            raise _ChartFailure
        self.xn, self.xd, self.x_lcs, self.x_res = xl
        self.yn, self.yd, self.y_lcs, self.y_res = yl
        det2 = self.gx.partial("x") * self.gy.partial("y") - (
            self.gx.partial("y") * self.gx.partial("y")
        )
        self.det2 = det2
        self._det2_terms = self._prepare_det2_terms(det2)
        self._det2_composed = None  # built lazily for the exact cusp test

    @staticmethod
    def _lift(resultants, keep: str):
        """(num, den, leading coeffs, resultant) of the coordinate lift."""
        if len(resultants) < 2:
            return None
        pairs = [
            (a, b)
            for a in range(len(resultants))
            for b in range(a + 1, len(resultants))
        ]
        for a, b in pairs:
            la = [c.to_unipoly("t") for c in resultants[a].as_poly_in(keep)]
            lb = [c.to_unipoly("t") for c in resultants[b].as_poly_in(keep)]
            if len(la) < 3 or len(lb) < 3:
                continue
            got = _prs_linear_element(la, lb)
            if got is not None:
                c0, c1, res = got
                num, den = _reduced_pair(-c0, c1)
                return num, den, (la[-1], lb[-1]), res
        return None

    def attach_discriminant(self, dint: List) -> None:
        D = UniPoly.from_int_coeffs(dint, "t")
        self._res_x_zero = _RootMembership(self.x_res, D)
        self._res_y_zero = _RootMembership(self.y_res, D)

    def verify_member(self, alpha: AlgebraicNumber) -> bool:
        """Certify the subresultant lift at this member (see class docstring)."""
        try:
            for lc in (*self.x_lcs, *self.y_lcs):
                if alpha.sign_of(lc) == 0:
                    return False
            if alpha.sign_of(self.xd) == 0 or alpha.sign_of(self.yd) == 0:
                return False
        except Exception:
            return False
        return self._res_x_zero.holds_at(alpha) and self._res_y_zero.holds_at(alpha)

    def _prepare_det2_terms(self, det2: MPoly):
        """Term data for pure-integer interval evaluation of det2 at the lift.

        det2(xn/xd, yn/yd, t) * xd^a yd^b is an integer-combination of
        xn^i xd^(a-i) yn^j yd^(b-j) t^k; the denominator xd^a yd^b has even
        exponents (a = b = 2), so the sign at the member equals the sign of
        the numerator value.
        """
        a = max((k[0] for k in det2.terms), default=0)
        b = max((k[1] for k in det2.terms), default=0)
        if a % 2 or b % 2:
            raise _ChartFailure  # sign trick needs even denominator powers
        dxn, dxd = max(self.xn.degree, 0), max(self.xd.degree, 0)
        dyn, dyd = max(self.yn.degree, 0), max(self.yd.degree, 0)
        terms = []
        scales = []
        for (i, j, k), c in det2.terms.items():
            scale = i * dxn + (a - i) * dxd + j * dyn + (b - j) * dyd + k
            terms.append((i, a - i, j, b - j, k, int(c.numerator), int(c.denominator)))
            scales.append(scale)
        max_scale = max(scales) if scales else 0
        den_lcm = 1
        import math as _math

        for (*_, dn) in terms:
            den_lcm = den_lcm // _math.gcd(den_lcm, dn) * dn
        packed = []
        for (i, ai, j, bj, k, cn, cd), sc in zip(terms, scales):
            packed.append((i, ai, j, bj, k, ZZ(cn * (den_lcm // cd)), max_scale - sc))
        return packed, max_scale

    def classify_node(self, alpha: AlgebraicNumber, max_steps: int = 200) -> SingularityClass:
        """Exact sign of the affine Hessian determinant at the lifted point.

        Pure-integer interval refinement decides the nonzero signs; the cusp
        case (exact zero) is certified through the composed numerator.
        """
        from .unipoly import ii_mul, ii_pow, zz_eval_interval

        terms, _ = self._det2_terms
        # the lift pairs are jointly integer-scaled, so raw coefficients keep
        # every term at a consistent positive scaling and the sum's sign is
        # the true sign of det2 at the point
        xn_i = [int(c.numerator) for c in self.xn.coeffs]
        xd_i = [int(c.numerator) for c in self.xd.coeffs]
        yn_i = [int(c.numerator) for c in self.yn.coeffs]
        yd_i = [int(c.numerator) for c in self.yd.coeffs]
        assert all(int(c.denominator) == 1 for c in (*self.xn.coeffs, *self.xd.coeffs, *self.yn.coeffs, *self.yd.coeffs))
        zero_checked = False
        for step in range(max_steps):
            p1, p2, q = alpha._int_interval()
            XN = zz_eval_interval(xn_i, p1, p2, q)
            XD = zz_eval_interval(xd_i, p1, p2, q)
            YN = zz_eval_interval(yn_i, p1, p2, q)
            YD = zz_eval_interval(yd_i, p1, p2, q)
            T = (min(p1, p2), max(p1, p2))
            Q = (q, q)
            lo = hi = ZZ(0)
            for (i, ai, j, bj, k, cz, deficit) in terms:
                acc = ii_pow(XN, i)
                acc = ii_mul(acc, ii_pow(XD, ai))
                acc = ii_mul(acc, ii_pow(YN, j))
                acc = ii_mul(acc, ii_pow(YD, bj))
                acc = ii_mul(acc, ii_pow(T, k))
                acc = ii_mul(acc, ii_pow(Q, deficit))
                term = (cz * acc[0], cz * acc[1]) if cz >= 0 else (cz * acc[1], cz * acc[0])
                lo += term[0]
                hi += term[1]
            if lo > 0:
                return SingularityClass.NODE_ISOLATED
            if hi < 0:
                return SingularityClass.NODE_NON_ISOLATED
            if not zero_checked and step >= 4:
                zero_checked = True
                if self._det2_is_zero_at(alpha):
                    return SingularityClass.CUSP  # rank <= 1 quadratic part
            alpha.refine_once()
        raise PrecisionExhausted("node classification did not certify")

    def _det2_is_zero_at(self, alpha: AlgebraicNumber) -> bool:
        if self._det2_composed is None:
            num, _ = _compose_lift(self.det2, self.xn, self.xd, self.yn, self.yd)
            self._det2_composed = num
        return alpha.is_root_of(self._det2_composed)

    def node_box(self, alpha: AlgebraicNumber, tol: Rat = QQ(1, 1 << 16)):
        xiv = RatFunc(self.xn, self.xd).enclose_at(alpha, tol)
        yiv = RatFunc(self.yn, self.yd).enclose_at(alpha, tol)
        pt = (xiv, yiv, RatInterval(1))
        rows = self.shear
        out = []
        for i in range(3):
            acc = RatInterval(0)
            for j in range(3):
                acc = acc + RatInterval(rows[i][j]) * (
                    pt[j] if isinstance(pt[j], RatInterval) else RatInterval(pt[j])
                )
            out.append(acc)
        return tuple(out)


class _MemberClassifier:
    """Lazy shear-retry wrapper around _PencilChart."""

    def __init__(self, basis: PencilBasis, disc: UniPoly):
        self.basis = basis
        self.dint = disc.primitive_int()
        self._charts: List[_PencilChart] = []
        self._shears = _pencil_shears()

    def _iter_charts(self) -> Iterable[_PencilChart]:
        for c in self._charts:
            yield c
        for shear in self._shears:
            try:
                chart = _PencilChart(self.basis, shear)
            except _ChartFailure:
                continue
            chart.attach_discriminant(self.dint)
            self._charts.append(chart)
            yield chart

    def chart_for(self, alpha: AlgebraicNumber) -> _PencilChart:
        for chart in self._iter_charts():
            if chart.verify_member(alpha):
                return chart
        raise PrecisionExhausted("no pencil chart certified this member")


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


class MemberReport:
    """One singular member of the pencil."""

    __slots__ = ("root", "chart", "multiplicity", "real", "singularity", "node", "t_exact")

    def __init__(self, root: Optional[IsolInterval], chart: str, multiplicity: int,
                 real: bool, singularity: SingularityClass, node=None,
                 t_exact: Optional[Rat] = None):
        self.root = root
        self.chart = chart  # "finite" | "infinity" | (root=None for complex members)
        self.multiplicity = multiplicity
        self.real = real
        self.singularity = singularity
        self.node = node
        self.t_exact = t_exact

    @property
    def isolated_nodes(self) -> int:
        return 1 if self.singularity is SingularityClass.NODE_ISOLATED else 0

    def __repr__(self):
        where = "t=oo" if self.chart == "infinity" else (
            f"t in {self.root}" if self.root is not None else "complex pair"
        )
        return f"MemberReport({where}, mult={self.multiplicity}, {self.singularity.value})"


class EnumReport:
    __slots__ = ("complex_total", "members", "real_count", "isolated_node_histogram",
                 "signed_count", "discriminant")

    def __init__(self, complex_total: int, members: List[MemberReport],
                 real_count: int, isolated_node_histogram: List[int],
                 signed_count: int, discriminant: UniPoly):
        self.complex_total = complex_total
        self.members = members
        self.real_count = real_count
        self.isolated_node_histogram = isolated_node_histogram
        self.signed_count = signed_count
        self.discriminant = discriminant

    def fingerprint(self) -> Tuple[int, Tuple[int, ...]]:
        """Chamber fingerprint: real count and sorted isolated-node counts."""
        return self.real_count, tuple(sorted(self.isolated_node_histogram))

    def __repr__(self):
        return (
            f"EnumReport(complex={self.complex_total}, real={self.real_count}, "
            f"signed={self.signed_count})"
        )


def welschinger_count(report: EnumReport) -> int:
    """Sum of (-1)^(isolated nodes) over the real members."""
    return sum(
        m.multiplicity * (-1) ** m.isolated_nodes for m in report.members if m.real
    )


# ---------------------------------------------------------------------------
# the enumeration pipeline
# ---------------------------------------------------------------------------


def _classify_exact_member(F: TriPoly) -> Tuple[SingularityClass, object]:
    """Classification of a rational-coefficient member via the curve module."""
    curve = PlaneCurve(F)
    pts = singular_points(curve)
    if len(pts) == 1 and pts[0].points_represented == 1:
        p = pts[0]
        return classify_singularity(curve, p), p.coordinates
    # several singular points: the member is reducible (only on walls)
    return SingularityClass.OTHER, None


def enumerate_members(cfg: PointConfig, probing: bool = False) -> EnumReport:
    """Full complex/real/signed report; strict mode refuses walls."""
    basis = cubic_system(cfg)
    D, inf_mult = pencil_discriminant(basis)
    parts = squarefree_decomposition(D)
    if not probing:
        if inf_mult >= 2 or any(mult >= 2 for _, mult in parts):
            raise OnWall("pencil discriminant has a multiple root")
    classifier = _MemberClassifier(basis, D)
    members: List[MemberReport] = []
    total = 0
    for factor, mult in parts:
        fint = factor.primitive_int()
        ivs = isolate_real_roots(factor)
        from .curves import _sniff_rational

        n_real = 0
        for iv in ivs:
            # cheap fast path only: the algebraic route handles any rational
            # root it misses, just without the exact-coordinate shortcut
            iv = _sniff_rational(iv, factor, max_den=1 << 10)
            n_real += 1
            if iv.is_exact:
                t0 = iv.lower
                F = basis.member(t0)
                klass, node = _classify_exact_member(F)
                members.append(MemberReport(iv, "finite", mult, True, klass, node, t_exact=t0))
            else:
                from .unipoly import refine as _refine

                iv = _refine(iv, factor, iv.width / (1 << 24))
                alpha = AlgebraicNumber(fint, iv)
                chart = classifier.chart_for(alpha)
                klass = chart.classify_node(alpha)
                node = chart.node_box(alpha)
                members.append(
                    MemberReport(alpha.interval, "finite", mult, True, klass, node)
                )
            total += mult
        n_complex = factor.degree - n_real
        for _ in range(n_complex):
            members.append(
                MemberReport(None, "finite", mult, False, SingularityClass.NODE_COMPLEX_PAIR)
            )
            total += mult
    if inf_mult > 0:
        klass, node = _classify_exact_member(basis.F1)
        members.append(MemberReport(None, "infinity", inf_mult, True, klass, node))
        total += inf_mult
    if total != DISC_DEGREE:
        raise AssertionError(f"member multiplicities sum to {total}, not 12")
    real_members = [m for m in members if m.real]
    real_count = sum(m.multiplicity for m in real_members)
    histogram = [m.isolated_nodes for m in real_members]
    report = EnumReport(total, members, real_count, histogram, 0, D)
    report.signed_count = welschinger_count(report)
    return report


# ---------------------------------------------------------------------------
# wall verdicts
# ---------------------------------------------------------------------------


class WallVerdict:
    __slots__ = ("kind", "line", "detail")

    def __init__(self, kind: str, line: Optional[int] = None, detail: str = ""):
        self.kind = kind  # Generic | CuspWall | TangencyWall | NonGeneric
        self.line = line
        self.detail = detail

    def __repr__(self):
        extra = f", line={self.line}" if self.line is not None else ""
        return f"WallVerdict({self.kind}{extra})"

    def __eq__(self, other):
        if isinstance(other, str):
            return self.kind == other
        if isinstance(other, WallVerdict):
            return self.kind == other.kind and self.line == other.line
        return NotImplemented


def line_restriction_disc(basis: PencilBasis, line: TriPoly) -> Tuple[UniPoly, "QQ"]:
    """Binary-form discriminant of member|line as a polynomial in t.

    Also returns the t=infinity value (the restriction discriminant of F1).
    Projective: tangency at any point of the line, including the chart point
    at infinity, makes it vanish.
    """
    from .curves import line_span_points

    P, Q = line_span_points(line)
    c0 = list(basis.F0.restrict_to_line(P, Q).coeffs)
    c1 = list(basis.F1.restrict_to_line(P, Q).coeffs)
    c0 += [QQ(0)] * (4 - len(c0))
    c1 += [QQ(0)] * (4 - len(c1))
    coeffs_t = [UniPoly([c0[i], c1[i]], "t") for i in range(4)]
    a, b, c, d = coeffs_t[3], coeffs_t[2], coeffs_t[1], coeffs_t[0]
    L = (
        18 * a * b * c * d
        - 4 * b * b * b * d
        + b * b * c * c
        - 4 * a * c * c * c
        - 27 * a * a * d * d
    )
    dF1 = _binary_cubic_disc([c1[3], c1[2], c1[1], c1[0]])
    return L, dF1


def _binary_cubic_disc(abcd) -> "QQ":
    a, b, c, d = (rat(x) for x in abcd)
    return (
        18 * a * b * c * d - 4 * b ** 3 * d + b ** 2 * c ** 2 - 4 * a * c ** 3 - 27 * a ** 2 * d ** 2
    )


def is_on_wall(cfg: PointConfig) -> WallVerdict:
    """Exact wall verdict: cusp walls, declared-line tangency walls, rank drops."""
    try:
        basis = cubic_system(cfg)
    except (DegenerateConfig, UnsupportedDegree) as e:
        return WallVerdict("NonGeneric", detail=str(e))
    try:
        D, inf_mult = pencil_discriminant(basis)
    except IdenticallySingularPencil as e:
        return WallVerdict("NonGeneric", detail=str(e))
    parts = squarefree_decomposition(D)
    multiple = [fm for fm in parts if fm[1] >= 2]
    if inf_mult >= 2:
        klass, _ = _classify_exact_member(basis.F1)
        if klass is SingularityClass.CUSP:
            return WallVerdict("CuspWall", detail="cuspidal member at t=infinity")
        return WallVerdict("NonGeneric", detail="degenerate member at t=infinity")
    if multiple:
        verdicts = []
        for factor, mult in multiple:
            verdicts.append(_classify_multiple_root(basis, factor, mult))
        for v in verdicts:
            if v.kind == "CuspWall":
                return v
        for v in verdicts:
            if v.kind != "Generic":
                return v
    for j, line in enumerate(cfg.lines):
        L, dF1 = line_restriction_disc(basis, line)
        if dF1 == 0 and inf_mult > 0:
            return WallVerdict("TangencyWall", line=j, detail="t=infinity member tangent")
        g = poly_gcd(D, L)
        if g.degree > 0 and isolate_real_roots(g):
            return WallVerdict("TangencyWall", line=j)
    return WallVerdict("Generic")


def _classify_multiple_root(basis: PencilBasis, factor: UniPoly, mult: int) -> WallVerdict:
    """Cusp wall iff the repeated member has a rank-1 quadratic part."""
    from .curves import _sniff_rational

    ivs = isolate_real_roots(factor)
    n_real = 0
    for iv in ivs:
        n_real += 1
        iv = _sniff_rational(iv, factor)
        if iv.is_exact:
            F = basis.member(iv.lower)
            klass, _ = _classify_exact_member(F)
            if klass is SingularityClass.CUSP:
                return WallVerdict("CuspWall")
            return WallVerdict("NonGeneric", detail=f"repeated member is {klass.value}")
        alpha = AlgebraicNumber(factor.primitive_int(), iv)
        classifier = _MemberClassifier(basis, factor)
        try:
            chart = classifier.chart_for(alpha)
        except PrecisionExhausted:
            return WallVerdict("NonGeneric", detail="repeated member has several singular points")
        klass = chart.classify_node(alpha)
        if klass is SingularityClass.CUSP:
            return WallVerdict("CuspWall")
        return WallVerdict("NonGeneric", detail=f"repeated member is {klass.value}")
    # all repeated roots are complex: spec-letter cusp wall when the member
    # carries a rank-1 quadratic part (checked through the chart's det2)
    classifier = _MemberClassifier(basis, factor)
    for chart in classifier._iter_charts():
        num, _ = _compose_lift(chart.det2, chart.xn, chart.xd, chart.yn, chart.yd)
        g = poly_gcd(factor, num)
        if g.degree > 0:
            return WallVerdict("CuspWall", detail="complex-conjugate cuspidal members")
        return WallVerdict("NonGeneric", detail="complex repeated members, rank 2")
    return WallVerdict("NonGeneric", detail="complex repeated members")


# ---------------------------------------------------------------------------
# line-constrained counts
# ---------------------------------------------------------------------------


def line_constrained_count(cfg: PointConfig, probing: bool = False) -> Tuple[int, int]:
    """(complex_total_with_mult, real_count) for point+line constraints.

    Each member meets each line in 3 points with multiplicity (Bezout on the
    restricted binary cubic); a real member contributes the product over
    lines of its real intersection counts (3 or 1 by the restriction
    discriminant's exact sign).
    """
    for j, line in enumerate(cfg.lines):
        for i, p in enumerate(cfg.points):
            if line(p) == 0:
                raise DegenerateConfig(f"line {j} passes through configuration point {i}")
    report = enumerate_members(cfg, probing=probing)
    basis = cubic_system(cfg)
    line_discs = [line_restriction_disc(basis, line) for line in cfg.lines]
    l = len(cfg.lines)
    complex_total = report.complex_total * 3 ** l
    real_total = 0
    for m in report.members:
        if not m.real:
            continue
        contrib = m.multiplicity
        for j, (L, dF1) in enumerate(line_discs):
            if m.chart == "infinity":
                s = sign(dF1)
            elif m.t_exact is not None:
                s = sign(L(m.t_exact))
            else:
                alpha = AlgebraicNumber(m.root.factor, m.root)
                s = alpha.sign_of(L)
            if s == 0:
                raise OnWall(f"member tangent to line {j} (or line through its node)")
            contrib *= 3 if s > 0 else 1
        real_total += contrib
    return complex_total, real_total


# ---------------------------------------------------------------------------
# seeded random configurations
# ---------------------------------------------------------------------------


def _collinear(p, q, r) -> bool:
    m = [
        [rat(p[0]), rat(p[1]), rat(p[2])],
        [rat(q[0]), rat(q[1]), rat(q[2])],
        [rat(r[0]), rat(r[1]), rat(r[2])],
    ]
    from .linalg import bareiss_det

    return bareiss_det(RatMatrix(m)) == 0


def _six_on_conic(pts) -> bool:
    rows = []
    for (x, y, z) in pts:
        rows.append([x * x, x * y, x * z, y * y, y * z, z * z])
    return exact_rank(RatMatrix(rows)) < 6


def in_general_position(pts: Sequence[Sequence[Rat]]) -> bool:
    """No three collinear, no six on a conic (exact tests).

    Either failure puts a reducible cubic in every pencil through the
    points, which lands the configuration on a degenerate stratum.
    """
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            if projectively_equal(pts[i], pts[j]):
                return False
            for k in range(j + 1, n):
                if _collinear(pts[i], pts[j], pts[k]):
                    return False
    import itertools

    for combo in itertools.combinations(range(n), 6):
        if _six_on_conic([pts[c] for c in combo]):
            return False
    return True


def random_point_config(rng: random.Random, bound: int = 12,
                        lines: Sequence[TriPoly] = ()) -> PointConfig:
    """Seeded random configuration in certified general position."""
    while True:
        pts = []
        while len(pts) < N_POINTS:
            cand = (rng.randint(-bound, bound), rng.randint(-bound, bound), 1)
            if any(projectively_equal(cand, p) for p in pts):
                continue
            pts.append(cand)
        if in_general_position(pts):
            return PointConfig(pts, lines)
