"""Fincke-Pohst style enumeration on exact positive definite forms."""

from fractions import Fraction
from math import ceil, floor, sqrt

from ._linalg import int_range_sq, ldl
from .errors import NotDefinite


def _candidates(center, budget, scale, parity):
    rng = int_range_sq(center, budget, scale)
    if rng is None:
        return []
    lo, hi = rng
    if parity is not None:
        if (lo - parity) % 2:
            lo += 1
        xs = range(lo, hi + 1, 2)
    else:
        xs = range(lo, hi + 1)
    # nearest to the center first, so the first leaf is a good incumbent
    return sorted(xs, key=lambda x: (abs(x - center), x))


def enumerate_form(p, bound, parity=None, strict=False):
    """All integer x with x^T p x <= bound (or < bound when strict).

    If `parity` is given, only x with x_i = parity_i (mod 2) are produced.
    Yields (x, value) pairs; x is a tuple and value is exact.

    The tree is walked in floating point with a small widening of every
    interval, so it can only over-generate; each leaf is then checked exactly.
    """
    n = len(p)
    bound = Fraction(bound)
    if n == 0:
        if (0 < bound) if strict else (0 <= bound):
            yield (), Fraction(0)
        return
    dec = ldl(p)
    if dec is None:
        raise NotDefinite("form is not positive definite")
    d = [float(v) for v in dec[0]]
    mu = [[float(v) for v in row] for row in dec[1]]
    rows = [list(r) for r in p]
    fb = float(bound)
    slack = 1e-9 * (1.0 + abs(fb))
    x = [0] * n

    def exact(v):
        return Fraction(sum(v[i] * sum(rows[i][j] * v[j] for j in range(n) if v[j])
                            for i in range(n) if v[i]))

    def rec(i, used):
        center = -sum(mu[i][j] * x[j] for j in range(i + 1, n))
        budget = fb + slack - used
        if budget < 0:
            return
        rad = sqrt(budget / d[i]) + 1e-9
        lo, hi = ceil(center - rad), floor(center + rad)
        if parity is not None and (lo - parity[i]) % 2:
            lo += 1
        step = 1 if parity is None else 2
        for xi in sorted(range(lo, hi + 1, step), key=lambda v: (abs(v - center), v)):
            x[i] = xi
            val = used + d[i] * (xi - center) ** 2
            if i == 0:
                ev = exact(x)
                if ev < bound or (not strict and ev == bound):
                    yield tuple(x), ev
            else:
                yield from rec(i - 1, val)
        x[i] = 0

    yield from rec(n - 1, 0.0)


def minimize_form(p, parity=None, exclude_zero=False):
    """Branch-and-bound minimum of x^T p x over a parity coset (or all of Z^n).

    Returns (value, x). With `exclude_zero` the zero vector is skipped.
    """
    n = len(p)
    if n == 0:
        if exclude_zero:
            raise ValueError("empty lattice has no nonzero vectors")
        return Fraction(0), ()
    dec = ldl(p)
    if dec is None:
        raise NotDefinite("form is not positive definite")
    d, mu = dec
    par = (lambda i: None) if parity is None else (lambda i: parity[i])

    # greedy (Babai-style) leaf gives the incumbent
    x = [0] * n
    val = Fraction(0)
    for i in range(n - 1, -1, -1):
        center = -sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = _nearest(center, par(i))
        val += d[i] * (x[i] - center) ** 2
    best = [val, tuple(x)]
    if exclude_zero and not any(x):
        i0 = min(range(n), key=lambda i: (p[i][i], i))
        best = [Fraction(p[i0][i0]), tuple(int(i == i0) for i in range(n))]

    x = [0] * n

    def rec(i, used):
        center = -sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for xi in _candidates(center, best[0] - used, d[i], par(i)):
            v = used + d[i] * (xi - center) ** 2
            if v >= best[0]:
                break  # sorted by distance from the center
            x[i] = xi
            if i == 0:
                if exclude_zero and not any(x):
                    continue
                best[0], best[1] = v, tuple(x)
            else:
                rec(i - 1, v)
        x[i] = 0

    rec(n - 1, Fraction(0))
    return best[0], best[1]


def _nearest(center, parity):
    if parity is None:
        lo = center.numerator // center.denominator
        return min((lo, lo + 1), key=lambda v: (abs(v - center), v))
    return min((v for v in range(int(center) - 3, int(center) + 4) if (v - parity) % 2 == 0),
               key=lambda v: (abs(v - center), v))
