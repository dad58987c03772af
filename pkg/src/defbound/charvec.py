"""Characteristic covectors, the delta invariant and the prime-index bounds.

Covectors are written in the dual basis, so xi . w for a basis vector w is
just the coordinate of xi, and the characteristic condition reduces to
coords[i] = gram[i][i] (mod 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import NamedTuple, Optional, Sequence

from ._qform import minimize_form
from .errors import BadInput, ParityViolation
from .lattice import GramLattice, dual_gram, require_definite


@dataclass(frozen=True)
class DeltaResult:
    delta: Fraction
    minimizer: tuple[int, ...]
    min_norm: Fraction


def parity_vector(lat: GramLattice) -> tuple[int, ...]:
    return tuple(lat.gram[i][i] % 2 for i in range(lat.rank))


def is_characteristic(lat: GramLattice, xi: Sequence[int]) -> bool:
    return len(xi) == lat.rank and all((x - g) % 2 == 0 for x, g in zip(xi, parity_vector(lat)))


def char_norm(lat: GramLattice, xi: Sequence[int]) -> Fraction:
    """xi . xi computed with the dual Gram matrix."""
    if not is_characteristic(lat, xi):
        raise ParityViolation(f"{tuple(xi)} is not characteristic for {lat!r}")
    inv = dual_gram(lat)
    n = lat.rank
    return sum((xi[i] * inv[i][j] * xi[j] for i in range(n) for j in range(n)), Fraction(0))


def min_char_norm(lat: GramLattice) -> DeltaResult:
    """Minimum of |xi . xi| over characteristic covectors, and the resulting delta."""
    require_definite(lat)
    n = lat.rank
    if n == 0:
        return DeltaResult(Fraction(0), (), Fraction(0))
    inv = dual_gram(lat)
    pos = [[-x for x in row] for row in inv]
    value, xi = minimize_form(pos, parity=parity_vector(lat))
    return DeltaResult((n - value) / 4, xi, value)


def delta(lat: GramLattice) -> Fraction:
    return min_char_norm(lat).delta


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class AppWitness(NamedTuple):
    k: int
    ks: tuple[int, ...]
    value: int


def lemma_app_witness(p: int, s: Sequence[int]) -> AppWitness:
    """Odd k and even k_i making k^2 + sum (k s_i - p k_i)^2 as small as possible.

    k ranges over the odd integers in (-p, p); for fixed k each k_i is the even
    integer putting k s_i - p k_i into that same window, which is also the
    choice minimizing its square. Ties prefer smaller |k|, then positive k.
    """
    if p % 2 == 0 or not _is_prime(p):
        raise BadInput(f"p = {p} is not an odd prime")
    for si in s:
        if si % 2 == 0 or abs(si) > p - 1:
            raise BadInput(f"s_i = {si} must be odd with |s_i| <= {p - 1}")
    best: Optional[AppWitness] = None
    for k in range(-p + 2, p - 1, 2):
        ks = []
        value = k * k
        for si in s:
            r = (k * si) % (2 * p)  # representative of k s_i mod 2p in [0, 2p)
            if r > p:
                r -= 2 * p
            ki = (k * si - r) // p
            ks.append(ki)
            value += r * r
        cand = AppWitness(k, tuple(ks), value)
        if best is None or (value, abs(k), -k) < (best.value, abs(best.k), -best.k):
            best = cand
    assert best is not None
    return best


def app_bound(p: int, length: int) -> Fraction:
    """(n + 2) p^2 / 3 with n - 1 = length, the strict upper bound for the witness value."""
    return Fraction((length + 3) * p * p, 3)


def prime_index_rank_bound(c: Fraction | int, p_parity: str) -> int:
    """Largest rank allowed for a prime-index sublattice of <-1>^n with delta <= c."""
    c = Fraction(c)
    if c < 0:
        raise BadInput("C must be non-negative")
    if p_parity == "odd":
        return floor(6 * c + 1)
    if p_parity == "two":
        return floor(4 * c)
    raise BadInput("p_parity must be 'odd' or 'two'")
