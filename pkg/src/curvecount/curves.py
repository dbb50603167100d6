"""Singular points of plane curves, their classification, and rational
parametrization of singular cubics.

Everything is exact: singular points are located by resultant elimination in
a sheared chart, lifted by subresultant rational-univariate representations,
and every classification decision is an exact sign or zero test (rational
fast path, gcd+Sturm at algebraic points).
"""
from __future__ import annotations

import enum
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .alg import AlgebraicContext, AlgebraicNumber, ExactScalarContext, RatFunc
from .errors import (
    ComponentContainment,
    NonReducedCurve,
    NotRationalCubic,
    PrecisionExhausted,
    ZeroInput,
)
from .linalg import RatMatrix, nullspace
from .qq import QQ, Rat, RatInterval, rat, sign
from .tripoly import (
    MPoly,
    TriPoly,
    subresultant_polynomial,
    sylvester_resultant_lists,
)
from .unipoly import (
    IsolInterval,
    UniPoly,
    discriminant,
    isolate_real_roots,
    poly_gcd,
    squarefree_part,
)


class SingularityClass(enum.Enum):
    NODE_ISOLATED = "NodeIsolated"
    NODE_NON_ISOLATED = "NodeNonIsolated"
    NODE_COMPLEX_PAIR = "NodeComplexPair"
    CUSP = "Cusp"
    TACNODE = "Tacnode"
    TRIPLE_POINT = "TriplePoint"
    OTHER = "Other"

    @property
    def local_degree(self) -> int:
        """Local degree of the evaluation map at the matching stable map.

        Nodes and the immersed special points contribute 1; a cusp is the
        degree-2 critical point (skyscraper length 1).
        """
        return 2 if self is SingularityClass.CUSP else 1

    @property
    def is_node(self) -> bool:
        return self in (
            SingularityClass.NODE_ISOLATED,
            SingularityClass.NODE_NON_ISOLATED,
            SingularityClass.NODE_COMPLEX_PAIR,
        )


class PlaneCurve:
    """Reduced-or-not plane projective curve with exact rational coefficients."""

    __slots__ = ("defining", "field")

    def __init__(self, defining: TriPoly, field: str = "QQ"):
        if defining.is_zero:
            raise ZeroInput("curve defined by the zero polynomial")
        self.defining = defining.content_cleared()
        self.field = field

    @property
    def degree(self) -> int:
        return self.defining.degree

    def __repr__(self):
        return f"PlaneCurve({self.defining!r})"

    def is_reduced(self) -> bool:
        """Certified repeated-factor test via restriction discriminants.

        A reduced curve has a transverse line through any fixed external
        point; a non-reduced one kills every restriction discriminant.  The
        grid size covers the discriminant's degree, so an all-zero scan is a
        proof, not a sample.
        """
        F = self.defining
        d = self.degree
        if d == 1:
            return True
        base = None
        k = 0
        while base is None:
            cand = (rat(1 + k), rat(2 + 3 * k), rat(1))
            if F(cand) != 0:
                base = cand
            k += 1
        dmax = d * (2 * d - 2)
        for a in range(dmax + 1):
            for b in range(dmax + 1):
                r = F.restrict_to_line(base, (rat(a), rat(b), rat(1)))
                if r.degree >= 1 and discriminant(r) != 0:
                    return True
        return False


class SingularPoint:
    """One singular point (or one complex-conjugate pair of them)."""

    __slots__ = ("coordinates", "reality", "points_represented", "_loc", "diagnostics")

    def __init__(self, coordinates, reality: str, points_represented: int = 1,
                 loc=None, diagnostics: str = ""):
        self.coordinates = coordinates  # triple of QQ or RatInterval, or None
        self.reality = reality  # "real" | "pair"
        self.points_represented = points_represented
        self._loc = loc
        self.diagnostics = diagnostics

    @property
    def is_real(self) -> bool:
        return self.reality == "real"

    def __repr__(self):
        return f"SingularPoint({self.coordinates}, {self.reality})"


class _Loc:
    """Internal: where and how a singular point lives in the sheared chart."""

    __slots__ = ("shear", "sheared", "alpha", "yfun", "exact_xy", "klass")

    def __init__(self, shear, sheared, alpha=None, yfun=None, exact_xy=None, klass=None):
        self.shear = shear          # 3x3 rational matrix A with G = F o A
        self.sheared = sheared      # the transformed TriPoly G
        self.alpha = alpha          # AlgebraicNumber for x*, or None
        self.yfun = yfun            # RatFunc giving y* from x*
        self.exact_xy = exact_xy    # (x0, y0) exact rationals, or None
        self.klass = klass          # precomputed class for complex pairs


class _ShearFailure(Exception):
    pass


def _shear_matrices(max_count: int):
    yield ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    rng = random.Random(0x5EED)
    count = 1
    while count < max_count:
        # random small unimodular matrix: product of elementary shears
        m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        for _ in range(4):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-3, 3)
            for k in range(3):
                m[i][k] += c * m[j][k]
        yield tuple(tuple(row) for row in m)
        count += 1


def _mat_vec(m, v):
    return tuple(
        sum((rat(m[i][j]) * v[j] for j in range(3)), start=QQ(0)) if not _has_interval(v)
        else _interval_dot(m[i], v)
        for i in range(3)
    )


def _has_interval(v) -> bool:
    return any(isinstance(x, RatInterval) for x in v)


def _interval_dot(row, v):
    acc = RatInterval(0)
    for c, x in zip(row, v):
        xi = x if isinstance(x, RatInterval) else RatInterval(x)
        acc = acc + xi * RatInterval(c)
    return acc


def _binary_forms_share_root(forms: List[List]) -> bool:
    """Common projective root test; each form is padded to its full degree."""
    nonzero = [f for f in forms if any(c != 0 for c in f)]
    if not nonzero:
        return True
    # root at (0:1) <=> every nonzero form drops its top coefficient
    if all(f[-1] == 0 for f in nonzero):
        return True
    g = UniPoly(nonzero[0], "w")
    for f in nonzero[1:]:
        g = poly_gcd(g, UniPoly(f, "w"))
        if g.degree == 0:
            return False
    return g.degree > 0


def _to_unipoly_coeffs(mp: MPoly, outer: str, inner: str) -> List[UniPoly]:
    return [c.to_unipoly(inner) for c in mp.as_poly_in(outer)]


def _eval_mpoly_ratfunc(mp: MPoly, x_val: RatFunc, y_val: RatFunc) -> RatFunc:
    out = mp.eval_generic({"x": x_val, "y": y_val})
    if not isinstance(out, RatFunc):
        out = RatFunc.constant(out, "x")
    return out


def singular_points(curve: PlaneCurve, max_shears: int = 24) -> List[SingularPoint]:
    """Complete singular locus over C, real points tagged and certified.

    Raises NonReducedCurve for curves with repeated factors and
    PrecisionExhausted when no shear in the budget separates the data.
    """
    if not curve.is_reduced():
        raise NonReducedCurve("singular_points requires a reduced curve")
    F = curve.defining
    if curve.degree == 1:
        return []
    for shear in _shear_matrices(max_shears):
        try:
            return _singular_points_in_chart(F, shear)
        except _ShearFailure:
            continue
    raise PrecisionExhausted("no shear separated the singular data")


def _singular_points_in_chart(F: TriPoly, shear) -> List[SingularPoint]:
    G = F.transform(shear).content_cleared()
    Gx, Gy, Gz = G.gradient()
    # no singular point may sit on the chart's line at infinity
    inf_forms = []
    for P in (Gx, Gy, Gz):
        coeffs = [QQ(0)] * P.degree + [QQ(0)]
        for (i, j, k), c in P.terms.items():
            if k == 0:
                coeffs[j] = c
        inf_forms.append(coeffs)
    if _binary_forms_share_root(inf_forms):
        raise _ShearFailure
    g = G.dehomogenize(2)
    gx = g.partial("x")
    gy = g.partial("y")
    h = Gz.dehomogenize(2)
    sys_polys = (gx, gy, h)
    ylists = [_to_unipoly_coeffs(p, "y", "x") for p in sys_polys]
    zero = UniPoly.zero("x")
    resultants = []
    for a, b in ((0, 1), (0, 2), (1, 2)):
        try:
            r = sylvester_resultant_lists(ylists[a], ylists[b], zero)
        except ZeroInput:
            raise _ShearFailure
        if not r.is_zero:
            resultants.append(r)
    # a vanishing pairwise resultant only means those two share a component
    # (e.g. dF/dy and dF/dz for y^2 z - x^3); the nonzero ones still carry
    # every singular x-coordinate, and the lift verification prunes the rest
    if not resultants:
        raise _ShearFailure
    W0 = resultants[0]
    for r in resultants[1:]:
        W0 = poly_gcd(W0, r)
    if W0.degree == 0:
        return []
    W1 = squarefree_part(W0)
    yfun = _y_lift(ylists, W1, zero)
    if yfun is None:
        raise _ShearFailure
    # verification: the lifted point must kill all three equations
    W = W1
    xid = RatFunc(UniPoly.x("x"))
    for p in sys_polys:
        v = _eval_mpoly_ratfunc(p, xid, yfun)
        if v.num.is_zero:
            continue
        W = poly_gcd(W, v.num)
        if W.degree == 0:
            return []
    if poly_gcd(W, yfun.den).degree != 0:
        raise _ShearFailure
    # classification polynomial: det of the affine Hessian along the lift
    det2 = g.partial("x").partial("x") * g.partial("y").partial("y") - (
        g.partial("x").partial("y") * g.partial("x").partial("y")
    )
    det2_val = _eval_mpoly_ratfunc(det2, xid, yfun)
    degenerate = poly_gcd(W, det2_val.num)

    out: List[SingularPoint] = []
    real_ivs = [_sniff_rational(iv, W) for iv in isolate_real_roots(W)]
    wint = W.primitive_int()
    for iv in real_ivs:
        alpha = AlgebraicNumber(wint, iv)
        loc = _Loc(shear, G, alpha=alpha, yfun=yfun)
        coords = _real_coordinates(shear, alpha, yfun)
        out.append(SingularPoint(coords, "real", 1, loc=loc))
    n_real = len(real_ivs)
    n_complex = W.degree - n_real
    if n_complex:
        deg_bad = degenerate.degree - sum(
            1 for iv in real_ivs if AlgebraicNumber(wint, iv).is_root_of(degenerate)
        )
        n_pairs = n_complex // 2
        bad_pairs = deg_bad // 2
        for i in range(n_pairs):
            klass = (
                SingularityClass.OTHER if i < bad_pairs else SingularityClass.NODE_COMPLEX_PAIR
            )
            diag = "degenerate quadratic part on a complex pair" if i < bad_pairs else ""
            out.append(
                SingularPoint(None, "pair", 2,
                              loc=_Loc(shear, G, klass=klass), diagnostics=diag)
            )
    return out


def _y_lift(ylists: List[List[UniPoly]], W1: UniPoly, zero: UniPoly) -> Optional[RatFunc]:
    """y* as a rational function of x* along the singular locus.

    A system equation linear in y lifts directly; otherwise the degree-1
    subresultant of a pair does.  Either way the denominator must avoid the
    candidate x-locus, which makes the lift certified at every root of W1.
    """
    for lst in ylists:
        if len(lst) - 1 == 1 and not lst[1].is_zero:
            if poly_gcd(W1, lst[1]).degree == 0:
                return RatFunc(-lst[0], lst[1])
    for a, b in ((0, 1), (0, 2), (1, 2)):
        la, lb = ylists[a], ylists[b]
        if len(la) - 1 < 2 or len(lb) - 1 < 2:
            continue
        try:
            s1 = subresultant_polynomial(la, lb, 1, zero)
        except (ValueError, ZeroInput):
            continue
        if len(s1) == 2 and not s1[1].is_zero and poly_gcd(W1, s1[1]).degree == 0:
            return RatFunc(-s1[0], s1[1])
    return None


def _sniff_rational(iv: IsolInterval, W: UniPoly, max_den: int = 1 << 24) -> IsolInterval:
    """Collapse an isolating interval to its root when that root is rational."""
    if iv.is_exact:
        return iv
    from .qq import best_rational_in
    from .unipoly import refine as _refine

    tight = _refine(iv, W, QQ(1, 2 * max_den * max_den))
    if tight.is_exact:
        return tight
    cand = best_rational_in(tight.lower, tight.upper, max_den)
    if cand is not None and W(cand) == 0:
        return IsolInterval(cand, cand, iv.multiplicity, factor=iv.factor)
    return tight


def _real_coordinates(shear, alpha: AlgebraicNumber, yfun: RatFunc):
    if alpha.is_rational:
        x0 = alpha.rational_value()
        y0 = yfun.num(x0) / yfun.den(x0)
        return _mat_vec(shear, (x0, y0, QQ(1)))
    xiv = alpha.enclosure()
    tol = QQ(1, 1 << 16)
    while xiv.width > tol:
        alpha.refine_once()
        xiv = alpha.enclosure()
    yiv = yfun.enclose_at(alpha, tol)
    return _mat_vec(shear, (alpha.enclosure(), yiv, RatInterval(1)))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _binary_compose(coeffs: Sequence, v, u):
    """Binary form composed with x = v0 U + u0 V, y = v1 U + u1 V.

    coeffs index i holds the x^(d-i) y^i coefficient; output likewise in
    (U, V).  Pure ring arithmetic, so it works in any evaluation context.
    """
    d = len(coeffs) - 1
    out = [QQ(0)] * (d + 1)

    def lin_pow(p0, p1, e):
        # (p0 U + p1 V)^e as a coefficient list in V-degree
        acc = [QQ(1)]
        for _ in range(e):
            nxt = [QQ(0)] * (len(acc) + 1)
            for idx, c in enumerate(acc):
                nxt[idx] = nxt[idx] + c * p0
                nxt[idx + 1] = nxt[idx + 1] + c * p1
            acc = nxt
        return acc

    for i, c in enumerate(coeffs):
        if ExactScalarContext.is_zero(c) if not hasattr(c, "is_zero") else c.is_zero:
            continue
        xs = lin_pow(v[0], u[0], d - i)
        ys = lin_pow(v[1], u[1], i)
        for a2, ca in enumerate(xs):
            for b2, cb in enumerate(ys):
                out[a2 + b2] = out[a2 + b2] + c * ca * cb
    return out


def _jet_coefficients(g: MPoly, x_val, y_val, order: int):
    """Taylor coefficients of g at the point, per total degree 2..order.

    Returns {2: [c20, c11, c02], 3: [...4 coeffs...], 4: [...5...]} where
    c_{ij} multiplies U^i V^j (binary-form index = j).
    """
    import math as _math

    jets: Dict[int, List] = {}
    for total in range(2, order + 1):
        row = []
        for j in range(total + 1):
            i = total - j
            p = g
            for _ in range(i):
                p = p.partial("x")
            for _ in range(j):
                p = p.partial("y")
            if isinstance(x_val, RatFunc):
                val = _eval_mpoly_ratfunc(p, x_val, y_val)
            else:
                val = p.eval({"x": x_val, "y": y_val})
            factor = QQ(1, _math.factorial(i) * _math.factorial(j))
            row.append(val * factor)
        jets[total] = row
    return jets


def _classify_from_jets(jets, ctx, real_point: bool) -> Tuple[SingularityClass, str]:
    A, B, C = jets[2][0], jets[2][1], jets[2][2]
    fa = lambda v: ctx.is_zero(v)
    if not (fa(A) and fa(B) and fa(C)):
        disc_q = B * B - 4 * A * C
        s = ctx.sign(disc_q) if real_point else (0 if ctx.is_zero(disc_q) else 1)
        if not ctx.is_zero(disc_q):
            if not real_point:
                return SingularityClass.NODE_COMPLEX_PAIR, ""
            return (
                SingularityClass.NODE_NON_ISOLATED if s > 0 else SingularityClass.NODE_ISOLATED
            ), ""
        # rank one: kernel direction of the quadratic part
        if not fa(A):
            v = (-B, 2 * A)
            u = (QQ(1), QQ(0))
            lam = A
        else:
            v = (2 * C, -B)
            u = (QQ(0), QQ(1))
            lam = C
        f3 = jets[3]
        comp3 = _binary_compose(f3, v, u)
        t3 = comp3[0]  # U^3 coefficient
        if not ctx.is_zero(t3):
            return SingularityClass.CUSP, ""
        e20 = comp3[1]  # U^2 V coefficient
        f4 = jets[4]
        comp4 = _binary_compose(f4, v, u)
        m4 = comp4[0]
        a40 = m4 - e20 * e20 / (4 * lam)
        if not ctx.is_zero(a40):
            return SingularityClass.TACNODE, ""
        return SingularityClass.OTHER, "A_k with k >= 4: beyond the order-4 jet cascade"
    # vanishing quadratic part: ordinary triple point iff the cubic is squarefree
    a, b, c, d = jets[3]
    disc3 = (
        18 * a * b * c * d
        - 4 * b * b * b * d
        + b * b * c * c
        - 4 * a * c * c * c
        - 27 * a * a * d * d
    )
    if not ctx.is_zero(disc3):
        if not real_point:
            return SingularityClass.OTHER, "triple point on a complex pair"
        return SingularityClass.TRIPLE_POINT, ""
    return SingularityClass.OTHER, "degenerate cubic cone: beyond the order-4 cascade"


def classify_singularity(curve: PlaneCurve, point: SingularPoint) -> SingularityClass:
    """Classify through A2/A3/D4; deeper jets return OTHER with diagnostics."""
    loc = point._loc
    if point.reality == "pair":
        if loc is not None and loc.klass is not None:
            return loc.klass
        return SingularityClass.NODE_COMPLEX_PAIR
    if loc is not None and loc.alpha is not None:
        g = loc.sheared.dehomogenize(2)
        if loc.alpha.is_rational:
            x0 = loc.alpha.rational_value()
            y0 = loc.yfun.num(x0) / loc.yfun.den(x0)
            jets = _jet_coefficients(g, x0, y0, 4)
            klass, diag = _classify_from_jets(jets, ExactScalarContext, True)
        else:
            xid = RatFunc(UniPoly.x("x"))
            jets = _jet_coefficients(g, xid, loc.yfun, 4)
            klass, diag = _classify_from_jets(jets, AlgebraicContext(loc.alpha), True)
        point.diagnostics = diag
        return klass
    # exact rational coordinates supplied by the caller
    coords = point.coordinates
    if coords is None or any(isinstance(c, RatInterval) for c in coords):
        raise ValueError("point carries neither exact coordinates nor a location handle")
    return _classify_exact(curve.defining, coords)[0]


def _classify_exact(F: TriPoly, coords) -> Tuple[SingularityClass, str]:
    coords = tuple(rat(c) for c in coords)
    Gx, Gy, Gz = F.gradient()
    if any(not P.vanishes_at(coords) for P in (Gx, Gy, Gz)):
        raise ValueError("not a singular point of the curve")
    # move into an affine chart where the point has a nonzero coordinate
    chart = max(range(3), key=lambda i: coords[i] != 0)
    g = F.dehomogenize(chart)
    rest = [coords[i] / coords[chart] for i in range(3) if i != chart]
    names = g.vars
    gg = g
    # rename chart variables to (x, y) for the shared cascade
    gg = MPoly(("x", "y"), dict(gg.terms))
    jets = _jet_coefficients(gg, rest[0], rest[1], 4)
    return _classify_from_jets(jets, ExactScalarContext, True)


def classify_at_exact_point(curve: PlaneCurve, coords) -> SingularityClass:
    return _classify_exact(curve.defining, coords)[0]


# ---------------------------------------------------------------------------
# stable map parametrizations
# ---------------------------------------------------------------------------


class StableMapParam:
    """Explicit degree-d map P1 -> P2 with marked affine domain points."""

    __slots__ = ("fx", "fy", "fz", "marks")

    def __init__(self, fx: UniPoly, fy: UniPoly, fz: UniPoly, marks: Sequence[Rat] = ()):
        self.fx, self.fy, self.fz = fx, fy, fz
        self.marks = tuple(rat(m) for m in marks)
        if len(set(self.marks)) != len(self.marks):
            raise ValueError("marked points must be pairwise distinct")
        g = poly_gcd(poly_gcd(fx, fy), fz)
        if g.degree > 0:
            raise ValueError("components share a factor; not a morphism")

    @property
    def degree(self) -> int:
        return max(self.fx.degree, self.fy.degree, self.fz.degree)

    def __call__(self, t: Rat):
        t = rat(t)
        return (self.fx(t), self.fy(t), self.fz(t))

    def with_marks(self, marks: Sequence[Rat]) -> "StableMapParam":
        return StableMapParam(self.fx, self.fy, self.fz, marks)

    def derivative_at(self, t: Rat):
        t = rat(t)
        return (
            self.fx.derivative()(t),
            self.fy.derivative()(t),
            self.fz.derivative()(t),
        )

    def elimination_resultant(self) -> TriPoly:
        """Res_t(x*fz - z*fx, y*fz - z*fy): the image times a degree-d factor."""
        d = self.degree
        vars3 = ("x", "y", "z")
        mx = [MPoly.constant(vars3, c) for c in self.fx.coeffs] or [MPoly.zero(vars3)]
        my = [MPoly.constant(vars3, c) for c in self.fy.coeffs] or [MPoly.zero(vars3)]
        mz = [MPoly.constant(vars3, c) for c in self.fz.coeffs] or [MPoly.zero(vars3)]
        X = MPoly.var(vars3, "x")
        Y = MPoly.var(vars3, "y")
        Z = MPoly.var(vars3, "z")
        n = max(len(mx), len(my), len(mz))
        mx += [MPoly.zero(vars3)] * (n - len(mx))
        my += [MPoly.zero(vars3)] * (n - len(my))
        mz += [MPoly.zero(vars3)] * (n - len(mz))
        p1 = [mz[i] * X - mx[i] * Z for i in range(n)]
        p2 = [mz[i] * Y - my[i] * Z for i in range(n)]
        res = sylvester_resultant_lists(p1, p2, MPoly.zero(vars3))
        return TriPoly(2 * d, {k: v for k, v in res.terms.items() if sum(k) == 2 * d})

    def implicitize(self) -> TriPoly:
        """Exact degree-d image curve of a birational parametrization.

        The defining form is the unique degree-d form vanishing along the
        parametrization (certified: nullspace dimension one); it is also the
        non-extraneous factor of elimination_resultant().
        """
        return _image_from_samples(self, self.degree)

    def is_immersion(self) -> bool:
        """No domain point kills the full derivative (checked projectively)."""
        dx, dy, dz = self.fx.derivative(), self.fy.derivative(), self.fz.derivative()
        # wedge of f and f' must have no common root (including infinity)
        w1 = self.fx * dy - self.fy * dx
        w2 = self.fx * dz - self.fz * dx
        w3 = self.fy * dz - self.fz * dy
        g = poly_gcd(poly_gcd(w1, w2), w3)
        if g.degree > 0:
            return False
        # infinity: top-degree behavior; degree drop of all three wedges
        dmax = 2 * self.degree - 2
        return any(w.degree == dmax for w in (w1, w2, w3) if not w.is_zero)


def _image_from_samples(param: StableMapParam, d: int) -> TriPoly:
    """The unique degree-d form vanishing along the parametrization.

    A degree-d form composed with the parametrization has t-degree at most
    d*deg(param), so vanishing at more sample points than that is vanishing
    identically.  Nullspace dimension != 1 means the image does not have
    degree d (multiple cover or degenerate map) and is rejected.
    """
    from .tripoly import monomials_of_degree

    monos = monomials_of_degree(d)
    rows = []
    t_needed = d * param.degree + 1
    tval = 0
    while len(rows) < t_needed + 3:
        pt = param(tval)
        if any(v != 0 for v in pt):
            rows.append([pt[0] ** i * pt[1] ** j * pt[2] ** k for (i, j, k) in monos])
        tval += 1
    ns = nullspace(RatMatrix(rows))
    if len(ns) != 1:
        raise NotRationalCubic(
            "parametrization does not define a unique degree-%d image" % d
        )
    return TriPoly.from_coeff_vector(d, [QQ(int(c)) for c in ns[0]]).content_cleared()


def parametrize_through_node(curve: PlaneCurve, point) -> StableMapParam:
    """Degree-3 parametrization of an irreducible singular cubic by lines
    through its singular point (exact rational coordinates required)."""
    if curve.degree != 3:
        raise NotRationalCubic("parametrization by lines needs a cubic")
    if isinstance(point, SingularPoint):
        coords = point.coordinates
    else:
        coords = point
    if coords is None or any(isinstance(c, RatInterval) for c in coords):
        raise NotRationalCubic("singular point must be exact rational")
    p = tuple(rat(c) for c in coords)
    F = curve.defining
    grads = F.gradient()
    if F(p) != 0 or any(not G.vanishes_at(p) for G in grads):
        raise NotRationalCubic("given point is not a singular point of the cubic")
    # complete p to a unimodular-ish basis: G(x,y,z) = F(a*x + b*y + p*z)
    idx = max(range(3), key=lambda i: p[i] != 0)
    basis = []
    for j in range(3):
        if j != idx:
            e = [QQ(0)] * 3
            e[j] = QQ(1)
            basis.append(tuple(e))
    for attempt in range(8):
        a, b = basis
        if attempt == 1:
            a = tuple(a[i] + p[i] for i in range(3))
        elif attempt >= 2:
            rng = random.Random(attempt)
            a = tuple(rat(rng.randint(-3, 3)) for _ in range(3))
            b = tuple(rat(rng.randint(-3, 3)) for _ in range(3))
        mat = [[a[i], b[i], p[i]] for i in range(3)]
        from .linalg import bareiss_det

        if bareiss_det(RatMatrix(mat)) == 0:
            continue
        G = F.transform(mat)
        # at (0:0:1): no z^3, z^2 x, z^2 y terms; split G = z*q2(x,y) + q3(x,y)
        q2 = [QQ(0)] * 3  # x^2, xy, y^2
        q3 = [QQ(0)] * 4  # x^3, x^2 y, x y^2, y^3
        bad = False
        for (i, j, k), c in G.terms.items():
            if k >= 2:
                bad = True
                break
            if k == 1:
                q2[j] += c
            else:
                q3[j] += c
        if bad:
            raise NotRationalCubic("point is not singular after transform (unexpected)")
        q2u = UniPoly(q2, "t")  # q2(1, t)
        q3u = UniPoly(q3, "t")
        if q2u.is_zero:
            raise NotRationalCubic("triple-point cubic (three concurrent lines)")
        if poly_gcd(q2u, q3u).degree > 0:
            raise NotRationalCubic("cubic contains a line through the singular point")
        fx = q2u
        fy = UniPoly((0,) + tuple(q2u.coeffs), "t")  # t * q2(1, t)
        fz = -q3u
        if max(fx.degree, fy.degree, fz.degree) != 3:
            continue  # direction at infinity degenerate; re-pick the basis
        FX = a[0] * fx + b[0] * fy + p[0] * fz
        FY = a[1] * fx + b[1] * fy + p[1] * fz
        FZ = a[2] * fx + b[2] * fy + p[2] * fz
        param = StableMapParam(FX, FY, FZ)
        return param
    raise NotRationalCubic("no usable chart for the line pencil")


def node_preimages(curve: PlaneCurve, point) -> UniPoly:
    """Quadratic whose roots are the node preimages of the line pencil chart."""
    if isinstance(point, SingularPoint):
        coords = point.coordinates
    else:
        coords = point
    p = tuple(rat(c) for c in coords)
    F = curve.defining
    idx = max(range(3), key=lambda i: p[i] != 0)
    basis = []
    for j in range(3):
        if j != idx:
            e = [QQ(0)] * 3
            e[j] = QQ(1)
            basis.append(tuple(e))
    a, b = basis
    mat = [[a[i], b[i], p[i]] for i in range(3)]
    G = F.transform(mat)
    q2 = [QQ(0)] * 3
    for (i, j, k), c in G.terms.items():
        if k == 1:
            q2[j] += c
    return UniPoly(q2, "t")


# ---------------------------------------------------------------------------
# line intersections / rational-nodal certification
# ---------------------------------------------------------------------------


def line_span_points(line: TriPoly) -> Tuple[Tuple, Tuple]:
    """Two rational points spanning a projective line ax+by+cz=0."""
    if line.degree != 1:
        raise ValueError("not a line")
    a = line.terms.get((1, 0, 0), QQ(0))
    b = line.terms.get((0, 1, 0), QQ(0))
    c = line.terms.get((0, 0, 1), QQ(0))
    ns = nullspace(RatMatrix([[a, b, c]]))
    if len(ns) != 2:
        raise ValueError("degenerate line")
    return tuple(QQ(int(v)) for v in ns[0]), tuple(QQ(int(v)) for v in ns[1])


def intersect_with_line(curve: PlaneCurve, line: TriPoly):
    """All intersection points with multiplicities summing to deg(curve)."""
    P, Q = line_span_points(line)
    r = curve.defining.restrict_to_line(P, Q)
    if r.is_zero:
        raise ComponentContainment("line divides the curve")
    d = curve.degree
    out = []
    inf_mult = d - r.degree
    if inf_mult > 0:
        out.append((tuple(P), inf_mult, True))
    total = inf_mult
    ivs = isolate_real_roots(r)
    for iv in ivs:
        if iv.is_exact:
            u = iv.lower
            pt = tuple(u * P[i] + Q[i] for i in range(3))
        else:
            u = iv.as_rat_interval()
            pt = tuple(u * RatInterval(P[i]) + RatInterval(Q[i]) for i in range(3))
        out.append((pt, iv.multiplicity, True))
        total += iv.multiplicity
    n_complex = r.degree - sum(iv.multiplicity for iv in ivs)
    if n_complex:
        out.append((None, n_complex, False))
        total += n_complex
    assert total == d
    return out


def _has_rational_line_factor(F: TriPoly) -> bool:
    """Exact search for a rational line component of a reduced curve."""
    probes = [((1, 0, 0), (0, 1, 5)), ((0, 1, 0), (1, 0, 7)), ((1, 1, 0), (0, 3, 1))]
    candidate_points: List[List[Tuple]] = []
    for P, Q in probes:
        r = F.restrict_to_line(tuple(map(rat, P)), tuple(map(rat, Q)))
        if r.is_zero:
            return True
        pts = []
        from .unipoly import rational_roots

        for u, _ in rational_roots(r):
            pts.append(tuple(u * rat(P[i]) + rat(Q[i]) for i in range(3)))
        if r.degree < F.degree:
            pts.append(tuple(map(rat, P)))
        candidate_points.append(pts)
    # a rational line component meets every probe line in a rational point;
    # pairs from two probes span it unless it passes through their meeting
    # point, hence all three probe pairings are tried
    for ia, ib in ((0, 1), (0, 2), (1, 2)):
        for p1 in candidate_points[ia]:
            for p2 in candidate_points[ib]:
                if p1 == p2:
                    continue
                line = _line_through(p1, p2)
                if line is None:
                    continue
                if _line_divides(F, line):
                    return True
    return False


def _line_through(p1, p2) -> Optional[TriPoly]:
    cx = p1[1] * p2[2] - p1[2] * p2[1]
    cy = p1[2] * p2[0] - p1[0] * p2[2]
    cz = p1[0] * p2[1] - p1[1] * p2[0]
    if cx == 0 and cy == 0 and cz == 0:
        return None
    return TriPoly(1, {(1, 0, 0): cx, (0, 1, 0): cy, (0, 0, 1): cz})


def _line_divides(F: TriPoly, line: TriPoly) -> bool:
    P, Q = line_span_points(line)
    return F.restrict_to_line(P, Q).is_zero


def is_rational_nodal(curve: PlaneCurve) -> bool:
    """Irreducible degree-d curve with exactly (d-1)(d-2)/2 singular points,
    all of them nodes (the Severi-variety membership test, d <= 4)."""
    if not curve.is_reduced():
        raise NonReducedCurve("is_rational_nodal requires a reduced curve")
    d = curve.degree
    if d > 4:
        raise NotImplementedError("classification path stops at degree 4")
    expected = (d - 1) * (d - 2) // 2
    pts = singular_points(curve)
    total = sum(p.points_represented for p in pts)
    if total != expected:
        return False
    for p in pts:
        if not classify_singularity(curve, p).is_node:
            return False
    if d <= 3:
        # reduced reducible curves of degree <= 3 all carry the wrong
        # singular-point count (two lines: 1 node vs 0; conic+secant: 2 vs 1;
        # conic+tangent: tacnode; three lines: 3 nodes or a triple point)
        return True
    # degree 4 with 3 nodes: only a (line) x (smooth cubic) split fakes the
    # count, and the line must then be rational or come with its conjugate
    # (which changes the count); an exact rational-line search settles it
    return not _has_rational_line_factor(curve.defining)
