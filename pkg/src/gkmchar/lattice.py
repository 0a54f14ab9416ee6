"""Exact enumeration of integer points under a positive-definite quadratic.

Used for theta-function lattice sums: all x in Z^r with

    1/2 x^T A x + b . x <= bound

for a rational positive-definite symmetric A.  Completing the square and
factoring A = L D L^T (L unit lower triangular) turns this into nested
one-dimensional intervals, each with exact rational endpoints, so the
enumeration is provably complete.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import sympy


def _to_fraction(x) -> Fraction:
    x = sympy.nsimplify(x)
    return Fraction(int(x.p), int(x.q))


def ldl(a) -> tuple:
    """(L, D) with a = L diag(D) L^T, as Fraction matrices; raises if not positive definite."""
    m = sympy.Matrix([[sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in a])
    if not m.is_symmetric():
        raise ValueError("quadratic form is not symmetric")
    lo, d = m.LDLdecomposition(hermitian=False)
    diag = [_to_fraction(d[i, i]) for i in range(m.rows)]
    if any(v <= 0 for v in diag):
        raise ValueError("quadratic form is not positive definite")
    lower = [[_to_fraction(lo[i, j]) for j in range(m.cols)] for i in range(m.rows)]
    return lower, diag


def solve(a, b) -> list:
    """Exact solution of a y = b."""
    m = sympy.Matrix([[sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in a])
    rhs = sympy.Matrix([sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in b])
    y = m.LUsolve(rhs)
    return [_to_fraction(y[i]) for i in range(m.rows)]


def _isqrt_ceil_frac(s: Fraction) -> int:
    """Smallest integer n >= 0 with n*n >= s."""
    if s <= 0:
        return 0
    n = isqrt(s.numerator // s.denominator)
    while Fraction(n * n) < s:
        n += 1
    return n


def points_below(a, b, bound) -> list:
    """All integer x with 1/2 x^T a x + b.x <= bound, in lexicographic order."""
    r = len(a)
    a = [[Fraction(v) for v in row] for row in a]
    b = [Fraction(v) for v in b]
    bound = Fraction(bound)
    lower, diag = ldl(a)
    center = [-v for v in solve(a, b)]  # minimiser c = -a^{-1} b
    # 1/2 (x-c)^T a (x-c) <= bound + 1/2 b.a^{-1}b  =  bound - 1/2 b.c
    radius = 2 * (bound - sum(bi * ci for bi, ci in zip(b, center)) / 2)
    if radius < 0:
        return []

    out = []
    x = [0] * r

    # (x-c)^T L D L^T (x-c) = sum_i d_i (y_i + sum_{j>i} L[j][i] y_j)^2 with y = x - c
    def rec(i: int, remaining: Fraction):
        if i < 0:
            out.append(tuple(x))
            return
        t = sum(lower[j][i] * (x[j] - center[j]) for j in range(i + 1, r))
        mid = center[i] - t
        s = remaining / diag[i]
        w = _isqrt_ceil_frac(s)
        base = mid.numerator // mid.denominator
        for xi in range(base - w - 1, base + w + 2):
            dev = xi - mid
            used = diag[i] * dev * dev
            if used <= remaining:
                x[i] = xi
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(r - 1, radius)
    out.sort()
    return out


def brute_force_points_below(a, b, bound, box: int) -> list:
    """Reference enumeration over the cube [-box, box]^r."""
    from itertools import product

    r = len(a)
    hits = []
    for x in product(range(-box, box + 1), repeat=r):
        v = Fraction(sum(x[i] * a[i][j] * x[j] for i in range(r) for j in range(r)), 2)
        v += sum(Fraction(bi) * xi for bi, xi in zip(b, x))
        if v <= bound:
            hits.append(x)
    return sorted(hits)
