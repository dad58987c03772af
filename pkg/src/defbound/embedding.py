"""Embedding searches between definite lattices.

Targets are split as T' + <-1>^m with T' free of unit vectors. Images of the
source basis are built one vector at a time: a component in T' drawn from its
short vectors, and a diagonal component whose coordinates are either already
touched by earlier images or "fresh". Fresh coordinates are interchangeable,
so they are filled with non-increasing positive entries only; this removes
the signed-permutation symmetry of the diagonal part without losing any
embedding class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional, Sequence

from sympy.combinatorics import Permutation, PermutationGroup

from . import _linalg as la
from .errors import NonSquareRatio, NotFullRank, SearchCapExceeded
from .isometry import VectorPool, automorphism_group, is_isometric
from .lattice import (
    GramLattice,
    determinant,
    direct_sum,
    is_diagonal_standard,
    orthogonal_complement,
    pair_reduce,
    reduce_stable,
    reduce_stable_with_basis,
    require_definite,
)


@dataclass(frozen=True)
class EmbeddingMatrix:
    """`map` has one column per source basis vector, written in target coordinates."""

    source: GramLattice
    target: GramLattice
    map: tuple[tuple[int, ...], ...]

    def images(self) -> list[tuple[int, ...]]:
        return [tuple(col) for col in zip(*self.map)] if self.map else [() for _ in range(self.source.rank)]

    def verify(self) -> bool:
        m = [list(r) for r in self.map]
        if self.source.rank == 0:
            return True
        got = la.matmul(la.matmul(la.transpose(m), [list(r) for r in self.target.gram]), m)
        return got == [list(r) for r in self.source.gram]


@dataclass(frozen=True)
class ComplementClass:
    representative: GramLattice
    multiplicity: int = 1  # number of enumerated embeddings landing in this class


# -- search engine ----------------------------------------------------------

@lru_cache(maxsize=None)
def _square_partitions(r: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    """Non-increasing tuples of positive integers <= max_part whose squares sum to r."""
    if r == 0:
        return ((),)
    out = []
    for a in range(min(max_part, isqrt(r)), 0, -1):
        for rest in _square_partitions(r - a * a, a):
            out.append((a,) + rest)
    return tuple(out)


def _search_order(p):
    """Order source vectors so each new one pairs nontrivially with earlier ones."""
    n = len(p)
    if n == 0:
        return []
    order = [max(range(n), key=lambda i: (p[i][i], sum(1 for j in range(n) if j != i and p[i][j]), -i))]
    rest = set(range(n)) - set(order)
    while rest:
        nxt = max(rest, key=lambda i: (sum(1 for j in order if p[i][j]), p[i][i], -i))
        order.append(nxt)
        rest.remove(nxt)
    return order


def _mixed_search(p1, tp, ndiag, first_only=False, max_nodes=None):
    """Embeddings of the positive form p1 into tp + I_ndiag.

    Yields lists of (x, y) pairs, x in Z^rank(tp), y in Z^ndiag, one per
    source basis vector in the original order of p1.
    """
    n = len(p1)
    if n == 0:
        yield []
        return
    r2 = len(tp)
    order = _search_order(p1)
    q = [[p1[a][b] for b in order] for a in order]
    maxnorm = max(q[i][i] for i in range(n))
    xs_by_norm: dict[int, list[tuple]] = {0: [tuple([0] * r2)]}
    tpv = {}
    if r2:
        pool = VectorPool(tp, maxnorm)
        for v in pool.vectors:
            xs_by_norm.setdefault(pool.norm(v), []).append(v)
    tpl = [list(r) for r in tp]

    def tpair(a, b):
        if a not in tpv:
            tpv[a] = tuple(la.matvec(tpl, a)) if r2 else ()
        return sum(s * t for s, t in zip(tpv[a], b))

    xs_sorted = sorted(xs_by_norm.items())
    chosen_x: list[tuple] = []
    chosen_y: list[list[int]] = []
    counter = [0]

    def tick():
        counter[0] += 1
        if max_nodes is not None and counter[0] > max_nodes:
            raise SearchCapExceeded("embedding search exceeded its node budget")

    def ys_for(i, budget, targets, used):
        """Diagonal parts: used coordinates under pairing constraints, then fresh ones."""
        prev = chosen_y
        m = len(prev)
        # tail norms for Cauchy-Schwarz pruning
        tails = [[0] * (used + 1) for _ in range(m)]
        for j in range(m):
            for k in range(used - 1, -1, -1):
                tails[j][k] = tails[j][k + 1] + prev[j][k] * prev[j][k]
        y = [0] * ndiag

        def rec(k, rem, resid):
            tick()
            for j in range(m):
                if resid[j] * resid[j] > rem * tails[j][k]:
                    return
            if k == used:
                if any(resid):
                    return
                free = ndiag - used
                for part in _square_partitions(rem, isqrt(rem)):
                    if len(part) <= free:
                        out = list(y)
                        for t, a in enumerate(part):
                            out[used + t] = a
                        yield out
                return
            lim = isqrt(rem)
            for v in sorted(range(-lim, lim + 1), key=lambda t: (abs(t), -t)):
                y[k] = v
                new = [resid[j] - v * prev[j][k] for j in range(m)]
                yield from rec(k + 1, rem - v * v, new)
            y[k] = 0

        yield from rec(0, budget, list(targets))

    def used_coords():
        u = 0
        for yv in chosen_y:
            for k in range(ndiag - 1, -1, -1):
                if yv[k]:
                    u = max(u, k + 1)
                    break
        return u

    def rec(i):
        if i == n:
            yield [(chosen_x[k], tuple(chosen_y[k])) for k in range(n)]
            return
        tick()
        ni = q[i][i]
        used = used_coords()
        for xn, xs in xs_sorted:
            if xn > ni:
                break
            for x in xs:
                targets = []
                for j in range(i):
                    targets.append(q[i][j] - (tpair(x, chosen_x[j]) if r2 else 0))
                for y in ys_for(i, ni - xn, targets, used):
                    chosen_x.append(x)
                    chosen_y.append(y)
                    yield from rec(i + 1)
                    chosen_x.pop()
                    chosen_y.pop()

    inv = [0] * n
    for pos, a in enumerate(order):
        inv[a] = pos
    for sol in rec(0):
        yield [sol[inv[a]] for a in range(n)]
        if first_only:
            return


def _split_target(target: GramLattice):
    """(T', m, B): rows of B are the basis of T' followed by the unit vectors, in target coords."""
    tprime, m, basis = reduce_stable_with_basis(target)
    if m == 0:
        return tprime, 0, [list(r) for r in la.identity(target.rank)]
    # the unit vectors: orthogonal complement of T' inside the target
    from .lattice import shortest_vectors
    units = [list(v) for v in shortest_vectors(target, 1)]
    return tprime, m, [list(r) for r in basis] + units


def _to_target(sol, b):
    """Map solution columns (split coordinates) to target coordinates; returns the map matrix."""
    cols = []
    for x, y in sol:
        z = list(x) + list(y)
        cols.append([sum(z[k] * b[k][c] for k in range(len(z))) for c in range(len(b[0]))] if b else [])
    return la.transpose(cols) if cols else []


def _reduced_source(source: GramLattice):
    r, u = pair_reduce(source.negated())
    return r, u, la.integer_inverse(u) if source.rank else []


def _as_embedding(source, target, red_map, uinv):
    m = la.matmul(red_map, uinv) if red_map else [[] for _ in range(target.rank)]
    if source.rank == 0:
        m = [() for _ in range(target.rank)]
    return EmbeddingMatrix(source, target, tuple(tuple(r) for r in m))


def find_embedding(source: GramLattice, target: GramLattice, max_nodes=None) -> Optional[EmbeddingMatrix]:
    """Some embedding of `source` into `target`, or None if none exists."""
    require_definite(source)
    require_definite(target)
    if source.rank > target.rank:
        return None
    if source.rank == 0:
        return EmbeddingMatrix(source, target, tuple(() for _ in range(target.rank)))
    tprime, m, b = _split_target(target)
    r, _, uinv = _reduced_source(source)
    for sol in _mixed_search(r, tprime.negated(), m, first_only=True, max_nodes=max_nodes):
        emb = _as_embedding(source, target, _to_target(sol, b), uinv)
        assert emb.verify()
        return emb
    return None


def embed_in_diagonal(lat: GramLattice, n: int, max_nodes=None) -> Optional[EmbeddingMatrix]:
    """Embedding of `lat` into <-1>^n, or None when there is none (the Donaldson test)."""
    require_definite(lat)
    if n < lat.rank:
        return None
    return find_embedding(lat, GramLattice.standard(n), max_nodes=max_nodes)


def saturation_rank(lat: GramLattice) -> int:
    """Ambient rank beyond which embeddability into <-1>^N no longer changes.

    Image columns touch at most sum |v_i . v_i| coordinates, so any embedding
    into a larger diagonal lattice already lives in one of this rank.
    """
    r, _ = pair_reduce(lat.negated())
    return max(lat.rank, sum(r[i][i] for i in range(lat.rank)))


def _row_canonical(mat):
    """Canonical form of a matrix under row permutations and row sign changes."""
    rows = []
    for row in mat:
        nz = next((x for x in row if x), 0)
        rows.append(tuple(-x for x in row) if nz < 0 else tuple(row))
    return tuple(sorted(rows, reverse=True))


def enumerate_embeddings(source: GramLattice, target: GramLattice, max_nodes=None) -> list[EmbeddingMatrix]:
    """All embeddings of `source` into `target`, one per orbit of Aut(target)."""
    require_definite(source)
    require_definite(target)
    if source.rank > target.rank:
        return []
    if source.rank == 0:
        return [EmbeddingMatrix(source, target, tuple(() for _ in range(target.rank)))]
    r, _, uinv = _reduced_source(source)
    if is_diagonal_standard(target):
        seen = {}
        for sol in _mixed_search(r, [], target.rank, max_nodes=max_nodes):
            red_map = [list(c) for c in zip(*[y for _, y in sol])]
            key = _row_canonical(red_map)
            if key not in seen:
                seen[key] = _as_embedding(source, target, [list(row) for row in key], uinv)
        return [seen[k] for k in sorted(seen)]
    return _orbit_embeddings(source, target, r, uinv, max_nodes)


def _orbit_embeddings(source, target, r, uinv, max_nodes):
    """Orbit representatives via pointwise stabilizers of Aut(target) acting on short vectors."""
    n = len(r)
    aut = automorphism_group(target)
    pt = target.negated()
    pool = VectorPool(pt, max(r[i][i] for i in range(n)))
    if not pool.vectors:
        return []
    perms = []
    for g in aut.generators:
        perm = [pool.index[tuple(la.matvec(g, v))] for v in pool.vectors]
        perms.append(Permutation(perm))
    group = PermutationGroup(perms) if perms else PermutationGroup([Permutation(list(range(len(pool.vectors))))])
    stab_cache = {(): group}
    results = []
    chosen: list[int] = []
    counter = [0]

    def stabilizer(prefix):
        key = tuple(prefix)
        if key not in stab_cache:
            stab_cache[key] = group.pointwise_stabilizer(list(prefix))
        return stab_cache[key]

    def rec(i):
        counter[0] += 1
        if max_nodes is not None and counter[0] > max_nodes:
            raise SearchCapExceeded("embedding search exceeded its node budget")
        if i == n:
            results.append(list(chosen))
            return
        cands = [c for c in pool.by_norm.get(r[i][i], [])
                 if all(pool.pairing(c, pool.vectors[chosen[j]]) == r[i][j] for j in range(i))]
        if not cands:
            return
        h = stabilizer(chosen)
        covered = set()
        for c in cands:
            if c in covered:
                continue
            covered |= set(h.orbit(c))
            chosen.append(c)
            rec(i + 1)
            chosen.pop()

    rec(0)
    out = []
    for sol in results:
        cols = [pool.vectors[c] for c in sol]
        out.append(_as_embedding(source, target, la.transpose(cols), uinv))
    return out


# -- complements and overlattices -------------------------------------------

def _stable_key(lat: GramLattice):
    return (lat.rank, determinant(lat))


def _dedupe_classes(lats: Sequence[GramLattice]) -> list[tuple[GramLattice, int]]:
    classes: list[list] = []
    for lat in lats:
        for cls in classes:
            rep = cls[0]
            if _stable_key(rep) == _stable_key(lat) and (rep.gram == lat.gram or is_isometric(lat, rep)):
                cls[1] += 1
                break
        else:
            classes.append([lat, 1])
    return [(c[0], c[1]) for c in classes]


def _class_sort_key(lat: GramLattice):
    return (lat.rank, abs(determinant(lat)), lat.gram)


def complement_classes(g1: GramLattice, g2: GramLattice, extra: int = 1,
                       max_nodes=None) -> list[ComplementClass]:
    """Stable classes of orthogonal complements of embeddings g1 -> g2 + <-1>^N*.

    N* = sum |v_i . v_i| over the given basis of g1, plus `extra` (default 1).
    """
    require_definite(g1)
    require_definite(g2)
    nstar = sum(-g1.gram[i][i] for i in range(g1.rank)) + extra
    g2r, j = reduce_stable(g2)
    ndiag = j + nstar
    ambient = direct_sum(g2r, GramLattice.standard(ndiag))
    r, _, _ = _reduced_source(g1) if g1.rank else ([], None, None)
    comps = []
    seen_images = set()
    for sol in _mixed_search(r, g2r.negated(), ndiag, max_nodes=max_nodes):
        vs = [tuple(x) + tuple(y) for x, y in sol]
        key = (tuple(x for x, _ in sol), _row_canonical([list(c) for c in zip(*[y for _, y in sol])]) if sol else ())
        if key in seen_images:
            continue
        seen_images.add(key)
        comp = orthogonal_complement(ambient, vs)
        comps.append(reduce_stable(comp)[0])
    classes = _dedupe_classes(comps)
    classes.sort(key=lambda c: _class_sort_key(c[0]))
    return [ComplementClass(rep, mult) for rep, mult in classes]


def _nullspace_mod_p(a, p):
    """Basis of {x in F_p^n : a x = 0} for a square integer matrix a."""
    n = len(a)
    m = [[x % p for x in row] for row in a]
    pivcols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivcols]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, pc in zip(m, pivcols):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis


def _projective_points(basis, p):
    k = len(basis)
    n = len(basis[0]) if basis else 0
    for lead in range(k):
        # coefficient vectors whose first nonzero entry (at `lead`) is 1
        for tail in _all_vectors(k - lead - 1, p):
            coeffs = [0] * lead + [1] + list(tail)
            yield [sum(c * b[t] for c, b in zip(coeffs, basis)) % p for t in range(n)]


def _all_vectors(k, p):
    if k == 0:
        yield ()
        return
    for rest in _all_vectors(k - 1, p):
        for v in range(p):
            yield (v,) + rest


def prime_overlattices(lat: GramLattice, p: int) -> list[GramLattice]:
    """Integral lattices M containing `lat` with [M : lat] = p, up to isometry."""
    require_definite(lat)
    n = lat.rank
    if n == 0 or determinant(lat) % (p * p):
        return []
    g = [list(r) for r in lat.gram]
    found = []
    for w in _projective_points(_nullspace_mod_p(g, p), p):
        if lat.norm(w) % (p * p):
            continue
        gens = [[p if i == j else 0 for j in range(n)] for i in range(n)] + [w]
        h, _ = la.hnf_rows(gens)
        rows = [row for row in h if any(row)]
        gram = la.matmul(la.matmul(rows, g), la.transpose(rows))
        assert all(x % (p * p) == 0 for row in gram for x in row)
        found.append(GramLattice([[x // (p * p) for x in row] for row in gram]))
    classes = _dedupe_classes(found)
    return sorted((rep for rep, _ in classes), key=_class_sort_key)


def embedding_index(e: EmbeddingMatrix) -> int:
    """Index of the image of a full-rank embedding, sqrt(|det source / det target|)."""
    if e.source.rank != e.target.rank:
        raise NotFullRank("index is only defined for embeddings of equal rank")
    ds, dt = abs(determinant(e.source)), abs(determinant(e.target))
    if ds % dt:
        raise NonSquareRatio(f"det ratio {ds}/{dt} is not an integer")
    q = ds // dt
    root = isqrt(q)
    if root * root != q:
        raise NonSquareRatio(f"det ratio {q} is not a perfect square")
    if e.map:
        assert abs(la.bareiss_det([list(r) for r in e.map])) == root
    return root
