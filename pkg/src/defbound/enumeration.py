"""Finite enumerations of definite lattices.

Lattices of a given rank and determinant are generated as Gram matrices of
bases satisfying necessary conditions for Hermite-Korkine-Zolotarev
reduction, written in Gram-Schmidt terms (q*_k squared lengths, mu_kj
coefficients):

* |mu_kj| <= 1/2;
* q*_k is the minimum of the projected lattice pi_k(L), so it is at most the
  squared length of every projected later basis vector, and at most
  gamma_m (det pi_k(L))^(1/m) with m = n - k + 1 (Hermite's constant);
* the first vector is a shortest vector of L.

Every lattice has such a basis, so the search is complete; candidates are then
deduplicated by isometry.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, isqrt
from typing import Optional, Sequence

from .charvec import delta
from .embedding import complement_classes, find_embedding, _dedupe_classes, _class_sort_key
from .errors import BadInput, RankCapExceeded
from .lattice import (
    GramLattice,
    determinant,
    direct_sum,
    is_negative_definite,
    reduce_stable,
    shortest_vectors,
)

MAX_RANK = 8

# gamma_m^m for m <= 8 (exact Hermite constants)
_HERMITE_POW = {1: Fraction(1), 2: Fraction(4, 3), 3: Fraction(2), 4: Fraction(4),
                5: Fraction(8), 6: Fraction(64, 3), 7: Fraction(64), 8: Fraction(256)}


def hermite_power(m: int) -> Fraction:
    """An upper bound for gamma_m^m, exact for m <= 8 and (1 + m/4)^m beyond."""
    if m in _HERMITE_POW:
        return _HERMITE_POW[m]
    return (1 + Fraction(m, 4)) ** m


@dataclass
class LatticeClassSet:
    """Pairwise non-isometric negative definite lattices (stable-class representatives where noted)."""

    classes: list[GramLattice]
    audit: list[dict] = field(default_factory=list)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


@dataclass(frozen=True)
class BoundedSetQuery:
    gamma1: GramLattice
    gamma2: GramLattice
    C: Fraction
    D: int
    rank_cap: int

    def __post_init__(self):
        if self.rank_cap < 0:
            raise BadInput("rank_cap must be non-negative")


def _reduced_forms(n: int, det: int, min_norm: int):
    """Positive definite integer forms of rank n and determinant det meeting the HKZ conditions."""
    if n == 0:
        if det == 1:
            yield []
        return
    det = Fraction(det)
    g = [[0] * n for _ in range(n)]
    qs: list[Fraction] = []  # Gram-Schmidt squared lengths
    mu = [[Fraction(0)] * n for _ in range(n)]

    def row(k, detk):
        m = n - k
        cap = hermite_power(m) * det / detk  # q*_k^m <= cap
        if k == n - 1:
            # last step: q*_k is forced by the determinant
            choose_off(k, 0, detk, forced=det / detk, cap=cap)
        else:
            choose_off(k, 0, detk, forced=None, cap=cap)

    def choose_off(k, j, detk, forced, cap):
        if j == k:
            yield_diag(k, detk, forced, cap)
            return
        c = sum((mu[j][l] * mu[k][l] * qs[l] for l in range(j)), Fraction(0))
        lo = ceil(c - qs[j] / 2)
        hi = floor(c + qs[j] / 2)
        first_nonzero = all(g[k][l] == 0 for l in range(j))
        for v in range(lo, hi + 1):
            if first_nonzero and v > 0:
                continue  # fix the sign of b_k: first nonzero off-diagonal entry of L is positive
            g[k][j] = g[j][k] = v
            mu[k][j] = (v - c) / qs[j]
            choose_off(k, j + 1, detk, forced, cap)
        g[k][j] = g[j][k] = 0
        mu[k][j] = Fraction(0)

    def yield_diag(k, detk, forced, cap):
        proj = sum((mu[k][l] ** 2 * qs[l] for l in range(k)), Fraction(0))
        # lower bounds: q*_k >= q*_l - sum_{t=l}^{k-1} mu_kt^2 q*_t for every l < k
        lower = Fraction(min_norm) if k == 0 else Fraction(0)
        tail = Fraction(0)
        for l in range(k - 1, -1, -1):
            tail += mu[k][l] ** 2 * qs[l]
            lower = max(lower, qs[l] - tail)
        if forced is not None:
            qk_options = [forced]
        else:
            lo = ceil(lower + proj)
            # q*_k^m <= cap; find the largest integer diagonal with q* within the cap
            m = n - k
            hi_q = _root_floor_bound(cap, m)
            hi = floor(hi_q + proj)
            qk_options = [Fraction(d) - proj for d in range(max(lo, 1), hi + 1)]
        for qk in qk_options:
            if qk <= 0 or qk < lower or qk ** (n - k) > cap:
                continue
            diag = qk + proj
            if diag.denominator != 1:
                continue
            if k > 0 and diag < g[0][0]:
                continue  # b_1 is a shortest vector
            g[k][k] = int(diag)
            qs.append(qk)
            if k == n - 1:
                out.append([list(r) for r in g])
            else:
                row(k + 1, detk * qk)
            qs.pop()
        g[k][k] = 0

    out: list = []
    row(0, Fraction(1))
    yield from out


def _root_floor_bound(cap: Fraction, m: int) -> Fraction:
    """A rational upper bound for cap^(1/m)."""
    guess = float(cap) ** (1.0 / m)
    b = Fraction(guess).limit_denominator(1000) + Fraction(1, 1000)
    while b ** m < cap:
        b += Fraction(1, 100)
    return b


def enumerate_reduced(rank: int, det_abs: int, max_rank: int = MAX_RANK) -> list[GramLattice]:
    """Negative definite lattices with |det| = det_abs and no vectors of square -1, up to isometry."""
    if rank > max_rank:
        raise RankCapExceeded(f"rank {rank} exceeds the cap {max_rank}")
    if det_abs < 1:
        raise BadInput("det_abs must be positive")
    return list(_reduced_classes(rank, det_abs))


@lru_cache(maxsize=None)
def _reduced_classes(rank: int, det_abs: int) -> tuple:
    # rank 8 takes minutes; the acceptance run and the bounded-set pipeline share it
    cands = []
    for g in _reduced_forms(rank, det_abs, 2):
        lat = GramLattice([[-x for x in r] for r in g])
        if rank and shortest_vectors(lat, 1):
            continue
        cands.append(lat)
    classes = [rep for rep, _ in _dedupe_classes(cands)]
    return tuple(sorted(classes, key=_class_sort_key))


def enumerate_definite(rank: int, det_abs: int, max_rank: int = MAX_RANK) -> LatticeClassSet:
    """All negative definite lattices of the given rank and |det|, up to isometry.

    Uses the unique splitting L = L' + <-1>^m with L' free of unit vectors.
    """
    if rank > max_rank:
        raise RankCapExceeded(f"rank {rank} exceeds the cap {max_rank}")
    out = []
    for m in range(rank, -1, -1):
        for core in enumerate_reduced(rank - m, det_abs, max_rank):
            out.append(direct_sum(core, GramLattice.standard(m)))
    return LatticeClassSet(sorted(out, key=_class_sort_key))


def admissible_determinants(h: int) -> list[int]:
    """Divisors D of h with h / D a perfect square."""
    if h < 1:
        raise BadInput("h must be positive")
    out = []
    for d in range(1, h + 1):
        if h % d == 0:
            q = h // d
            if isqrt(q) ** 2 == q:
                out.append(d)
    return out


def unimodular_stable_classes(rank_cap: int, C: Optional[Fraction] = None,
                              max_rank: int = MAX_RANK) -> LatticeClassSet:
    """Stable classes of unimodular negative definite lattices of rank <= rank_cap with delta <= C."""
    if rank_cap > max_rank:
        raise RankCapExceeded(f"rank cap {rank_cap} exceeds {max_rank}")
    out, audit = [], []
    for r in range(rank_cap + 1):
        for core in enumerate_reduced(r, 1, max_rank):
            d = delta(core)
            if C is None or d <= C:
                out.append(core)
                audit.append({"rank": r, "det": determinant(core), "delta": d})
    return LatticeClassSet(out, audit)


def _check_candidate(args):
    core, comps, C = args
    d = delta(core)
    rec = {"rank": core.rank, "det": determinant(core), "delta": d}
    if C is not None and d > C:
        rec["rejected"] = "delta"
        return core, rec, False
    for comp in comps:
        n = core.rank - comp.rank
        if n < 0:
            continue
        target = direct_sum(comp, GramLattice.standard(n))
        emb = find_embedding(core, target)
        if emb is not None:
            rec["complement"] = comp
            rec["embedding"] = emb
            return core, rec, True
    rec["rejected"] = "embedding"
    return core, rec, False


def enumerate_bounded_set(q: BoundedSetQuery, max_rank: int = MAX_RANK,
                          workers: int = 1) -> LatticeClassSet:
    """Stable classes [L] with rank(L') <= cap, |det L| = |D|, delta(L) <= C, and
    gamma1 + L embedding into gamma2 + <-1>^N, N = rk gamma1 + rk L - rk gamma2.

    The embedding condition is decided by complements: L' must embed with full
    rank into <-1>^n + E for some class [E] among the complements of gamma1 in
    gamma2 plus a diagonal lattice.
    """
    if q.rank_cap > max_rank:
        raise RankCapExceeded(f"rank cap {q.rank_cap} exceeds {max_rank}")
    D = abs(q.D)
    if D == 0:
        raise BadInput("D must be nonzero")
    comps = [c.representative for c in complement_classes(q.gamma1, q.gamma2)]
    cands = []
    for r in range(q.rank_cap + 1):
        cands.extend(enumerate_reduced(r, D, max_rank))
    jobs = [(core, comps, q.C) for core in cands]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_check_candidate, jobs))
    else:
        results = [_check_candidate(j) for j in jobs]
    classes, audit = [], []
    for core, rec, ok in results:
        audit.append(rec)
        if ok:
            classes.append(core)
    return LatticeClassSet(classes, audit)


def audit_member(q: BoundedSetQuery, core: GramLattice) -> dict:
    """Re-check a member of the bounded set directly, without complement classes."""
    g2r, j = reduce_stable(q.gamma2)
    N = q.gamma1.rank + core.rank - g2r.rank
    det_ok = abs(determinant(core)) == abs(q.D)
    delta_ok = delta(core) <= q.C
    emb = None
    if N >= 0 and is_negative_definite(core):
        emb = find_embedding(direct_sum(q.gamma1, core), direct_sum(g2r, GramLattice.standard(N)))
    return {"det": det_ok, "delta": delta_ok, "embedding": emb is not None, "witness": emb}
