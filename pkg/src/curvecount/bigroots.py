"""Exact root isolation for very large integer polynomials.

Wall resultants reach degree ~800 with multi-thousand-digit coefficients;
Sturm chains are hopeless there.  The squarefree part comes from a modular
gcd with a full correctness certificate (minimal modular degree plus two
exact divisibility checks verified modulo fresh primes covering the size
bounds), and isolation runs by interval subdivision with derivative
monotonicity certificates, which only ever evaluates the polynomial itself.
"""
from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import PrecisionExhausted
from .qq import QQ, ZZ, Rat, rat
from .unipoly import zz_eval_interval, zz_sign_at, zz_trim

_P25_CACHE: List[int] = []


def _primes25(count: int) -> List[int]:
    """Primes just below 2^25 (products stay well inside int64)."""
    global _P25_CACHE
    n = _P25_CACHE[-1] - 2 if _P25_CACHE else (1 << 25) - 1
    while len(_P25_CACHE) < count:
        if _is_prime(n):
            _P25_CACHE.append(n)
        n -= 2
    return _P25_CACHE[:count]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _mod_reduce(coeffs: Sequence[int], p: int) -> np.ndarray:
    return np.array([int(c) % p for c in coeffs], dtype=np.int64)


def _trim_np(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def _gcd_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd mod p by Euclid on numpy vectors."""
    a = _trim_np(a % p)
    b = _trim_np(b % p)
    while len(b):
        if len(a) < len(b):
            a, b = b, a
            continue
        inv = pow(int(b[-1]), -1, p)
        while len(a) >= len(b) and len(a):
            factor = int(a[-1]) * inv % p
            if factor:
                shift = len(a) - len(b)
                a[shift:] = (a[shift:] - factor * b) % p
            a = _trim_np(a[:-1])
        a, b = b, a
    if len(a):
        inv = pow(int(a[-1]), -1, p)
        a = (a * inv) % p
    return a


def _divmod_mod(a: np.ndarray, b: np.ndarray, p: int) -> Tuple[np.ndarray, np.ndarray]:
    a = a.copy() % p
    b = _trim_np(b % p)
    if len(b) == 0:
        raise ZeroDivisionError
    inv = pow(int(b[-1]), -1, p)
    if len(a) < len(b):
        return np.zeros(0, dtype=np.int64), _trim_np(a)
    q = np.zeros(len(a) - len(b) + 1, dtype=np.int64)
    for k in range(len(a) - len(b), -1, -1):
        c = int(a[k + len(b) - 1]) * inv % p
        q[k] = c
        if c:
            a[k : k + len(b)] = (a[k : k + len(b)] - c * b) % p
    return q, _trim_np(a[: len(b) - 1])


def _mul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    # p < 2^25 keeps products < 2^50; convolution sums stay inside int64
    return _trim_np(np.convolve(a, b) % p)


def _crt_vector(residue_rows: List[np.ndarray], primes: List[int], width: int) -> List[int]:
    """Symmetric-range CRT of per-prime coefficient vectors."""
    out = []
    M = 1
    for p in primes:
        M *= p
    half = M // 2
    pre = []
    for p in primes:
        Mi = M // p
        pre.append((Mi, pow(Mi % p, -1, p)))
    for j in range(width):
        acc = 0
        for row, p, (Mi, inv) in zip(residue_rows, primes, pre):
            v = int(row[j]) if j < len(row) else 0
            acc += Mi * ((v * inv) % p)
        acc %= M
        if acc > half:
            acc -= M
        out.append(acc)
    return out


def _coeff_bits(coeffs: Sequence[int]) -> int:
    return max((abs(int(c)).bit_length() for c in coeffs), default=1)


def _verify_product_mod(f: Sequence[int], g: Sequence[int], q: Sequence[int]) -> bool:
    """Certified equality f == g*q over Z: the prime product exceeds twice
    every coefficient magnitude on both sides, making the congruence an
    equality of the two fixed integer polynomials."""
    bound_bits = max(
        _coeff_bits(f),
        _coeff_bits(g) + _coeff_bits(q) + (min(len(g), len(q))).bit_length(),
    ) + 2
    need = bound_bits // 24 + 2
    primes = _primes25(need)
    for p in primes:
        fp = _mod_reduce(f, p)
        gp = _mod_reduce(g, p)
        qp = _mod_reduce(q, p)
        prod = _mul_mod(gp, qp, p)
        fp = _trim_np(fp)
        if len(prod) != len(fp) or not np.array_equal(prod, fp):
            return False
    return True


def squarefree_part_big(coeffs: Sequence[int]) -> List[int]:
    """Certified squarefree part f / gcd(f, f') for a big integer polynomial.

    Modular gcd degrees only ever overshoot the true degree, so a candidate
    of minimal observed degree that exactly divides both f and f' is the
    gcd, and the certified quotient is the squarefree part.
    """
    f = list(zz_trim([int(c) for c in coeffs]))
    if len(f) <= 2:
        return f
    df = [f[i] * i for i in range(1, len(f))]
    lc = f[-1]
    bits_g = _coeff_bits(f) + len(f).bit_length() + abs(lc).bit_length() + 4
    base = bits_g // 24 + 3
    attempt_primes = 2 * base + 8
    for _round in range(6):
        primes = [p for p in _primes25(attempt_primes) if lc % p != 0]
        deg_gcd = None
        good: List[Tuple[int, np.ndarray]] = []
        for p in primes:
            g = _gcd_mod(_mod_reduce(f, p), _mod_reduce(df, p), p)
            d = len(g) - 1
            if deg_gcd is None or d < deg_gcd:
                deg_gcd = d
                good = [(p, g)]
            elif d == deg_gcd:
                good.append((p, g))
        if deg_gcd == 0:
            return f
        if len(good) >= base:
            rows = [(g * (lc % p)) % p for p, g in good[:base]]
            plist = [p for p, _ in good[:base]]
            G = _primitive(_crt_vector(rows, plist, deg_gcd + 1))
            ok1, H = _try_exact_division(f, G)
            ok2, _ = _try_exact_division(df, G)
            if ok1 and ok2:
                return list(zz_trim([ZZ(int(c)) for c in _primitive(H)]))
        attempt_primes *= 2
        base += base // 2 + 4
    raise ArithmeticError("squarefree reconstruction failed to certify")


def _primitive(v: List[int]) -> List[int]:
    g = 0
    for c in v:
        g = math.gcd(g, int(c))
    if g == 0:
        return v
    lead = next((c for c in reversed(v) if c != 0), 1)
    if lead < 0:
        g = -g
    return [int(c) // g for c in v]


def _try_exact_division(f: Sequence[int], g: Sequence[int]) -> Tuple[bool, Optional[List[int]]]:
    """Exact divisibility of f by a primitive g over Z, certified.

    A primitive divisor has an integral quotient (Gauss), bounded Mignotte
    style by 2^deg(f) * |f|; the modular quotient is reconstructed and the
    product identity is then verified over enough fresh primes.
    """
    f = list(zz_trim([int(c) for c in f]))
    g = list(zz_trim([int(c) for c in g]))
    if not f:
        return True, []
    if not g or len(f) < len(g):
        return False, None
    bits = _coeff_bits(f) + len(f) + 8
    use = bits // 24 + 2
    primes = [p for p in _primes25(3 * use) if g[-1] % p != 0][:use]
    rows = []
    for p in primes:
        q, r = _divmod_mod(_mod_reduce(f, p), _mod_reduce(g, p), p)
        if len(r):
            return False, None
        rows.append(q)
    Q = _crt_vector(rows, primes, len(f) - len(g) + 1)
    if not _verify_product_mod(f, g, Q):
        return False, None
    return True, Q


# ---------------------------------------------------------------------------
# isolation by certified subdivision
# ---------------------------------------------------------------------------


def isolate_real_roots_big(coeffs: Sequence[int], lo: Rat, hi: Rat,
                           max_depth: int = 220) -> List[Tuple[Rat, Rat]]:
    """Disjoint isolating intervals for a SQUAREFREE integer polynomial on
    (lo, hi); endpoints must not be roots.

    Interval exclusion uses exact integer enclosures; a monotonicity
    certificate (derivative enclosure excluding zero) plus an endpoint sign
    change isolates a root.  Squarefreeness guarantees termination.
    """
    f = list(zz_trim([ZZ(int(c)) for c in coeffs]))
    if len(f) <= 1:
        return []
    df = [f[i] * i for i in range(1, len(f))]
    lo, hi = rat(lo), rat(hi)

    def sign_at(x: Rat) -> int:
        return zz_sign_at(f, int(x.numerator), int(x.denominator))

    if sign_at(lo) == 0 or sign_at(hi) == 0:
        raise ValueError("window endpoint is a root")
    out: List[Tuple[Rat, Rat]] = []

    def rec(a: Rat, b: Rat, sa: int, sb: int, depth: int):
        if depth > max_depth:
            raise PrecisionExhausted("subdivision exceeded the depth cap")
        p1, p2, q = _common_denominator(a, b)
        flo, fhi = zz_eval_interval(f, p1, p2, q)
        if flo > 0 or fhi < 0:
            return
        dlo, dhi = zz_eval_interval(df, p1, p2, q)
        if dlo > 0 or dhi < 0:
            # monotone: at most one root, present iff the signs flip
            if sa * sb < 0:
                out.append((a, b))
            elif sa == 0 or sb == 0:
                raise AssertionError("unexpected root at a subdivision point")
            return
        m = (a + b) / 2
        sm = sign_at(m)
        if sm == 0:
            out.append((m, m))
            eps = (b - a) / 64
            while True:
                l, r = m - eps, m + eps
                if sign_at(l) != 0 and sign_at(r) != 0 and _no_root_between(f, df, l, r, m):
                    break
                eps = eps / 2
            rec(a, l, sa, sign_at(l), depth + 1)
            rec(r, b, sign_at(r), sb, depth + 1)
        else:
            rec(a, m, sa, sm, depth + 1)
            rec(m, b, sm, sb, depth + 1)

    rec(lo, hi, sign_at(lo), sign_at(hi), 0)
    out.sort()
    return out


def _no_root_between(f, df, l: Rat, r: Rat, m: Rat) -> bool:
    """Certify (l, r) contains only the exact root m: monotone and tight."""
    p1, p2, q = _common_denominator(l, r)
    dlo, dhi = zz_eval_interval(df, p1, p2, q)
    return dlo > 0 or dhi < 0


def _common_denominator(a: Rat, b: Rat) -> Tuple[int, int, int]:
    da, db = int(a.denominator), int(b.denominator)
    q = da // math.gcd(da, db) * db
    return int(a.numerator) * (q // da), int(b.numerator) * (q // db), q
