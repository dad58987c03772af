"""Isometry testing and automorphism groups of definite lattices by backtracking.

The search assigns images to a pairwise-reduced basis of the source, drawing
candidates from the short vectors of the target and pruning every later level
by the pairings already fixed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from . import _linalg as la
from ._qform import enumerate_form
from .errors import SearchCapExceeded
from .lattice import GramLattice, determinant, pair_reduce, require_definite


@dataclass(frozen=True)
class IsometryWitness:
    """Integer matrix `map` with map^T gram2 map = gram1 (columns are images of L1's basis)."""

    map: tuple[tuple[int, ...], ...]

    def check(self, l1: GramLattice, l2: GramLattice) -> bool:
        m = [list(r) for r in self.map]
        got = la.matmul(la.matmul(la.transpose(m), [list(r) for r in l2.gram]), m)
        return [list(r) for r in l1.gram] == got and abs(la.bareiss_det(m)) == 1


class VectorPool:
    """All vectors of a positive definite form with norm <= bound, both signs, indexed."""

    def __init__(self, p, bound):
        self.p = [list(r) for r in p]
        self.bound = bound
        found = [(int(val), x) for x, val in enumerate_form(p, bound) if any(x)]
        found.sort(key=lambda t: (t[0], tuple(-c for c in t[1])))
        self.vectors = [x for _, x in found]
        self.index = {v: i for i, v in enumerate(self.vectors)}
        # p v, so that pairings are plain dot products
        self.pv = [tuple(la.matvec(self.p, v)) for v in self.vectors]
        self._pairs: dict = {}
        self.by_norm: dict[int, list[int]] = {}
        for i, (nv, _) in enumerate(found):
            self.by_norm.setdefault(nv, []).append(i)

    def norm(self, v):
        return sum(v[i] * sum(r[j] * v[j] for j in range(len(v))) for i, r in enumerate(self.p))

    def pairing(self, i, w):
        return sum(a * b for a, b in zip(self.pv[i], w))

    def pair_idx(self, i, j):
        key = (i, j) if i < j else (j, i)
        val = self._pairs.get(key)
        if val is None:
            val = self._pairs[key] = self.pairing(i, self.vectors[j])
        return val

    def norm_counts(self):
        return Counter({k: len(v) for k, v in self.by_norm.items()})


@lru_cache(maxsize=128)
def _cached_pool(p: tuple, bound: int) -> VectorPool:
    return VectorPool(p, bound)


def _search(p1, pool: VectorPool, prefix=(), extra=(), first_only=False,
            max_nodes=None) -> Iterator[list[int]]:
    """Yield index tuples (into pool) of images of p1's basis preserving all pairings.

    `prefix` fixes the images of the first basis vectors; `extra` is a list of
    (target_vector, required_pairings) constraints: the image of basis vector
    i must pair with target_vector to required_pairings[i].
    """
    n = len(p1)
    cands0 = []
    for i in range(n):
        lst = pool.by_norm.get(p1[i][i], [])
        for tv, req in extra:
            lst = [c for c in lst if pool.pairing(c, tv) == req[i]]
        cands0.append(lst)
    chosen: list[int] = list(prefix)
    for i, c in enumerate(prefix):
        if c not in cands0[i]:
            return
        for j in range(i):
            if pool.pair_idx(c, chosen[j]) != p1[i][j]:
                return
    counter = [0]

    def rec(levels):
        i = len(chosen)
        if i == n:
            yield list(chosen)
            return
        counter[0] += 1
        if max_nodes is not None and counter[0] > max_nodes:
            raise SearchCapExceeded("isometry search exceeded its node budget")
        for c in levels[0]:
            chosen.append(c)
            nxt = []
            ok = True
            for off, cands in enumerate(levels[1:], start=1):
                want = p1[i + off][i]
                f = [d for d in cands if pool.pair_idx(d, c) == want]
                if not f:
                    ok = False
                    break
                nxt.append(f)
            if ok:
                yield from rec(nxt)
            chosen.pop()

    # apply prefix constraints to the remaining levels
    levels = []
    for lvl in range(len(prefix), n):
        lst = cands0[lvl]
        for j, c in enumerate(prefix):
            lst = [d for d in lst if pool.pair_idx(d, c) == p1[lvl][j]]
        levels.append(lst)
    if any(not l for l in levels):
        return
    for sol in rec(levels):
        yield sol
        if first_only:
            return


def find_isometry(l1: GramLattice, l2: GramLattice, max_nodes=None) -> Optional[IsometryWitness]:
    require_definite(l1)
    require_definite(l2)
    if l1.rank != l2.rank or determinant(l1) != determinant(l2):
        return None
    n = l1.rank
    if n == 0:
        return IsometryWitness(())
    r1, u1 = pair_reduce(l1.negated())
    r2, _ = pair_reduce(l2.negated())
    bound = max(r1[i][i] for i in range(n))
    if bound != max(r2[i][i] for i in range(n)):
        # the maxima of reduced diagonals need not agree; use a common bound
        bound = max(bound, max(r2[i][i] for i in range(n)))
    pool2 = _cached_pool(l2.negated(), bound)
    # cheap rejection first: the reduced diagonal must be realisable in L2
    if any(r1[i][i] not in pool2.by_norm for i in range(n)):
        return None
    counts1 = Counter(int(val) for x, val in enumerate_form(r1, bound) if any(x))
    if counts1 != pool2.norm_counts():
        return None
    for sol in _search(r1, pool2, first_only=True, max_nodes=max_nodes):
        imgs = [pool2.vectors[c] for c in sol]  # images of reduced basis, in l2 coords
        x = la.transpose(imgs)  # columns = images
        # map for original basis: M = X u1^{-1}
        m = la.matmul(x, la.integer_inverse(u1))
        return IsometryWitness(tuple(tuple(r) for r in m))
    return None


def is_isometric(l1: GramLattice, l2: GramLattice) -> Optional[IsometryWitness]:
    """Witness of an isometry L1 -> L2, or None."""
    return find_isometry(l1, l2)


@dataclass
class AutomorphismGroup:
    """Generators (matrices acting on column vectors) and order of Aut(L)."""

    generators: list[tuple[tuple[int, ...], ...]]
    order: int
    orbit_lengths: list[int]


def _apply(g, v):
    return tuple(sum(g[i][j] * v[j] for j in range(len(v))) for i in range(len(g)))


def _orbit(v, gens):
    seen = {v}
    stack = [v]
    while stack:
        w = stack.pop()
        for g in gens:
            u = _apply(g, w)
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def automorphism_group(lat: GramLattice) -> AutomorphismGroup:
    """Generators of Aut(L) found by the standard base-and-orbit backtrack.

    Base points are the vectors of a pairwise-reduced basis. At each level we
    extend the group until the orbit of the base point covers every candidate
    image that extends to a full automorphism.
    """
    require_definite(lat)
    n = lat.rank
    if n == 0:
        return AutomorphismGroup([], 1, [])
    r, u = pair_reduce(lat.negated())
    bound = max(r[i][i] for i in range(n))
    pool = VectorPool(r, bound)
    e = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    gens: list[list[list[int]]] = []  # in reduced coordinates, columns = images
    orbit_lengths = [0] * n
    for i in range(n - 1, -1, -1):
        prefix = [pool.index[e[j]] for j in range(i)]
        cands = [c for c in pool.by_norm[r[i][i]]
                 if all(pool.pairing(c, e[j]) == r[i][j] for j in range(i))]
        known = _orbit(e[i], gens)
        dead: set = set()
        for c in cands:
            v = pool.vectors[c]
            if v in known or v in dead:
                continue
            found = None
            for sol in _search(r, pool, prefix=prefix + [c], first_only=True):
                found = sol
            if found is None:
                dead |= _orbit(v, gens)
            else:
                g = la.transpose([pool.vectors[k] for k in found])
                gens.append(g)
                known = _orbit(e[i], gens)
        orbit_lengths[i] = len(known)
    order = 1
    for k in orbit_lengths:
        order *= k
    uinv = la.integer_inverse(u)
    out = []
    for g in gens:
        m = la.matmul(la.matmul(u, g), uinv)
        out.append(tuple(tuple(row) for row in m))
    return AutomorphismGroup(out, order, orbit_lengths)
