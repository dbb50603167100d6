"""Exact arithmetic substrate: resultants, discriminants, isolation, ranks."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvecount.linalg import RatMatrix, exact_rank, int_det, nullspace
from curvecount.qq import QQ, RatInterval, rat
from curvecount.unipoly import (
    IsolInterval,
    UniPoly,
    count_real_roots_with_multiplicity,
    discriminant,
    isolate_real_roots,
    lagrange_interpolate,
    poly_gcd,
    rational_roots,
    refine,
    resultant,
    squarefree_decomposition,
    zz_resultant,
    zz_sylvester_resultant,
)
from curvecount.errors import ZeroInput

X = UniPoly.x("x")


def P(*coeffs):
    return UniPoly(coeffs, "x")


class TestResultant:
    def test_shared_root_vanishes(self):
        # (x-1)^2 against (x-1): shared root forces zero
        p = UniPoly.from_roots([1, 1], "x")
        q = UniPoly.from_roots([1], "x")
        assert resultant(p, q) == 0

    def test_substitution_examples(self):
        assert resultant(P(-2, 0, 1), P(-1, 1)) == -1  # x^2-2 vs x-1
        assert resultant(P(-1, 0, 1), P(0, 1)) == -1  # x^2-1 vs x

    def test_zero_input_rejected(self):
        with pytest.raises(ZeroInput):
            resultant(UniPoly.zero("x"), P(1, 1))

    def test_prs_matches_sylvester_determinant(self):
        rng = random.Random(7)
        for _ in range(120):
            da, db = rng.randint(1, 6), rng.randint(1, 6)
            a = [rng.randint(-9, 9) for _ in range(da)] + [rng.randint(1, 9)]
            b = [rng.randint(-9, 9) for _ in range(db)] + [rng.randint(1, 9)]
            assert zz_resultant(a, b) == zz_sylvester_resultant(a, b)

    def test_vanishes_iff_gcd_nonconstant(self):
        rng = random.Random(11)
        for _ in range(60):
            roots_a = [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))]
            roots_b = [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))]
            a = UniPoly.from_roots(roots_a, "x")
            b = UniPoly.from_roots(roots_b, "x")
            shared = set(roots_a) & set(roots_b)
            g = poly_gcd(a, b)
            assert (resultant(a, b) == 0) == (g.degree > 0) == bool(shared)


class TestDiscriminant:
    def test_quadratic(self):
        # disc(x^2 + 3x + 1) = 9 - 4 = 5
        assert discriminant(P(1, 3, 1)) == 5

    def test_depressed_cubic(self):
        # disc(x^3 + px + q) = -4p^3 - 27q^2 at p=-1, q=0 -> 4
        assert discriminant(P(0, -1, 0, 1)) == 4

    def test_repeated_root(self):
        assert discriminant(UniPoly.from_roots([1, 1], "x")) == 0

    def test_matches_root_difference_products(self):
        # disc of (x-1)(x-2)(x-4) = prod (ri - rj)^2 = 1*9*4 = 36
        p = UniPoly.from_roots([1, 2, 4], "x")
        assert discriminant(p) == 36


class TestIsolation:
    def test_sqrt2(self):
        ivs = isolate_real_roots(P(-2, 0, 1))
        assert len(ivs) == 2
        assert all(iv.multiplicity == 1 for iv in ivs)
        assert ivs[0].upper < 0 < ivs[1].lower

    def test_no_real_roots(self):
        assert isolate_real_roots(P(1, 0, 1)) == []

    def test_multiplicities(self):
        p = UniPoly.from_roots([1, 1, -2], "x")
        ivs = isolate_real_roots(p)
        assert len(ivs) == 2
        by_mult = {iv.multiplicity: iv for iv in ivs}
        assert by_mult[2].contains(1) or by_mult[2].is_exact
        assert by_mult[1].contains(-2)

    def test_exact_rational_roots_found(self):
        p = UniPoly.from_roots([rat("1/3"), 5], "x") * P(1, 0, 1)
        roots = rational_roots(p)
        assert sorted(r for r, _ in roots) == [rat("1/3"), 5]

    def test_root_count_identity_random(self):
        # real roots (with mult) + 2 * complex pairs (with mult) = degree
        rng = random.Random(3)
        for _ in range(40):
            deg = rng.randint(1, 7)
            coeffs = [rng.randint(-8, 8) for _ in range(deg)] + [rng.randint(1, 8)]
            p = P(*coeffs)
            n_real = count_real_roots_with_multiplicity(p)
            assert (p.degree - n_real) % 2 == 0
            assert 0 <= n_real <= p.degree

    @given(st.lists(st.integers(-6, 6), min_size=1, max_size=5))
    @settings(max_examples=60, deadline=None)
    def test_constructed_roots_recovered(self, roots):
        p = UniPoly.from_roots(roots, "x")
        ivs = isolate_real_roots(p)
        assert sum(iv.multiplicity for iv in ivs) == len(roots)
        distinct = sorted(set(roots))
        assert len(ivs) == len(distinct)
        for r, iv in zip(distinct, sorted(ivs, key=lambda i: i.lower)):
            assert iv.contains(r)


class TestRefine:
    def test_contract(self):
        p = P(-2, 0, 1)
        iv = [i for i in isolate_real_roots(p) if i.lower > 0][0]
        out = refine(iv, p, rat("1/1000"))
        assert out.width <= rat("1/1000")
        assert out.contains(rat("1414/1000")) or out.lower > rat("1414/1000")
        # sqrt(2) stays inside
        assert out.lower * out.lower <= 2 <= out.upper * out.upper

    def test_exact_point_fixed(self):
        iv = IsolInterval(0, 0, 1)
        assert refine(iv, P(0, 1), rat("1/8")).is_exact

    def test_even_multiplicity(self):
        p = UniPoly.from_roots([-2, -2], "x")
        iv = isolate_real_roots(p)[0]
        out = refine(iv, p, rat("1/8"))
        assert out.width <= rat("1/8")
        assert out.contains(-2)

    def test_sign_preservation(self):
        p = UniPoly.from_roots([1, 3], "x")
        iv = [i for i in isolate_real_roots(p) if i.contains(1)][0]
        out = refine(iv, p, rat("1/64"))
        assert out.contains(1)
        assert not out.contains(3)


class TestSquarefree:
    def test_decomposition_structure(self):
        p = UniPoly.from_roots([1, 1, 1, 2, 2, 5], "x")
        parts = squarefree_decomposition(p)
        assert sorted(m for _, m in parts) == [1, 2, 3]
        for f, m in parts:
            if m == 3:
                assert f(1) == 0
            if m == 2:
                assert f(2) == 0
            if m == 1:
                assert f(5) == 0

    def test_product_reconstructs(self):
        p = UniPoly.from_roots([0, 0, 4, -3, -3, -3], "x")
        parts = squarefree_decomposition(p)
        prod = UniPoly.constant(1, "x")
        for f, m in parts:
            prod = prod * f ** m
        assert prod * p.lc == p * prod.lc


class TestRank:
    def test_identity(self):
        assert exact_rank(RatMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3

    def test_proportional_rows(self):
        assert exact_rank(RatMatrix([[1, 2], [2, 4]])) == 1

    def test_zero(self):
        assert exact_rank(RatMatrix([[0, 0], [0, 0]])) == 0

    def test_nullspace_annihilates(self):
        rng = random.Random(5)
        for _ in range(25):
            nr, nc = rng.randint(1, 5), rng.randint(1, 6)
            m = RatMatrix(
                [[QQ(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(nc)] for _ in range(nr)]
            )
            ns = nullspace(m)
            assert len(ns) == nc - exact_rank(m)
            for v in ns:
                assert all(x == 0 for x in m.mul_vector(v))

    def test_rank_against_prime_field(self):
        # probabilistic cross-check harness: mod-p rank must agree for
        # at least 95% of random integer matrices (here: all of them)
        rng = random.Random(17)
        p = 2_147_483_647
        agree = 0
        total = 60
        for _ in range(total):
            nr, nc = rng.randint(1, 6), rng.randint(1, 6)
            rows = [[rng.randint(-50, 50) for _ in range(nc)] for _ in range(nr)]
            r_exact = exact_rank(RatMatrix(rows))
            r_mod = _rank_mod_p(rows, p)
            agree += r_exact == r_mod
        assert agree >= int(0.95 * total)

    def test_det_oracle(self):
        rng = random.Random(23)
        for _ in range(30):
            n = rng.randint(1, 5)
            rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
            assert int_det(rows) == _naive_det(rows)


def _rank_mod_p(rows, p):
    m = [[x % p for x in row] for row in rows]
    rank = 0
    cols = len(m[0])
    row = 0
    for c in range(cols):
        piv = None
        for r in range(row, len(m)):
            if m[r][c] % p:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][c], -1, p)
        for r in range(row + 1, len(m)):
            f = (m[r][c] * inv) % p
            if f:
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
    return rank


def _naive_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            acc += (-1) ** j * rows[0][j] * _naive_det(minor)
    return acc


class TestInterpolation:
    def test_roundtrip(self):
        p = P(3, rat("-1/2"), 0, 7)
        pts = [(i, p(i)) for i in range(5)]
        q = lagrange_interpolate(pts, "x")
        assert q == p

    def test_interval_evaluation_encloses(self):
        p = P(-2, 0, 1)
        iv = RatInterval(rat("7/5"), rat("3/2"))
        out = p.eval_interval(iv)
        assert out.lo <= p(rat("141/100")) <= out.hi
