"""Exact integer and rational matrix helpers.

Matrices are tuples (or lists) of rows. Nothing here touches floating point
except `_isqrt_range`, which only uses floats as a starting guess and then
corrects exactly.
"""

from fractions import Fraction
from math import gcd, isqrt


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def matmul(a, b):
    if not a:
        return []
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def bareiss_det(m):
    """Exact determinant of an integer matrix by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rational_inverse(m):
    """Gauss-Jordan inverse over the rationals."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def ldl(p):
    """Decompose a positive definite form as q(x) = sum_i d[i] (x_i + sum_{j>i} mu[i][j] x_j)^2.

    Returns (d, mu) with Fraction entries, or None if some pivot is not
    positive (the form is not positive definite).
    """
    n = len(p)
    a = [[Fraction(x) for x in row] for row in p]
    d = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        piv = a[i][i]
        if piv <= 0:
            return None
        d.append(piv)
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / piv
        for j in range(i + 1, n):
            if a[i][j] == 0:
                continue
            f = a[i][j] / piv
            for k in range(j, n):
                a[j][k] -= f * a[i][k]
                a[k][j] = a[j][k]
    return d, mu


def hnf_rows(rows):
    """Row-style Hermite normal form.

    Returns (h, u) where h = u * rows, u unimodular, h upper echelon with
    positive pivots and entries above each pivot reduced into [0, pivot).
    Zero rows are kept at the bottom of h.
    """
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return [], []
    ncols = len(a[0])
    u = identity(m)
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= m:
            break
        # gcd elimination on column c among rows r..m-1
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        pivots.append(c)
        r += 1
    return a, u


def integer_kernel(a, n):
    """Basis (rows, in Hermite form) of {x in Z^n : a x = 0} for an integer matrix a."""
    m = len(a)
    if m == 0:
        return identity(n)
    aug = [[a[i][j] for i in range(m)] + [int(j == k) for k in range(n)] for j in range(n)]
    h, _ = hnf_rows(aug)
    ker = [row[m:] for row in h if not any(row[:m])]
    h2, _ = hnf_rows(ker)
    return [row for row in h2 if any(row)]


def integer_inverse(u):
    """Inverse of a unimodular integer matrix."""
    inv = rational_inverse(u)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def int_range_sq(center, budget, scale):
    """Integers x with scale * (x - center)^2 <= budget, as (lo, hi); None if empty.

    `center`, `budget`, `scale` are exact rationals with scale > 0.
    """
    if budget < 0:
        return None
    t = Fraction(budget) / scale
    # float guess then exact correction
    r = t.numerator / t.denominator
    rad = r ** 0.5 if r > 0 else 0.0
    c = Fraction(center)
    lo = int((c.numerator / c.denominator) - rad) - 1
    hi = int((c.numerator / c.denominator) + rad) + 1
    while (lo - c) ** 2 > t and lo <= hi:
        lo += 1
    while lo - 1 <= c and (lo - 1 - c) ** 2 <= t:
        lo -= 1
    while (hi - c) ** 2 > t and hi >= lo:
        hi -= 1
    while hi + 1 >= c and (hi + 1 - c) ** 2 <= t:
        hi += 1
    if lo > hi:
        return None
    return lo, hi


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
