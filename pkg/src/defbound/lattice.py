"""Exact arithmetic on integer lattices given by Gram matrices.

A lattice is stored as its Gram matrix in a fixed basis. Everything is exact:
Python integers for Gram entries, `fractions.Fraction` for duals. The empty
lattice (rank 0) has determinant 1 and counts as negative definite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from ._qform import enumerate_form
from .errors import DegenerateSublattice, NotDefinite, SingularGram

Matrix = tuple[tuple[int, ...], ...]
RationalGram = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class GramLattice:
    """Symmetric, nondegenerate integer Gram matrix in a chosen basis."""

    gram: Matrix

    def __init__(self, gram: Sequence[Sequence[int]] = ()):
        rows = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")
        if n and la.bareiss_det(rows) == 0:
            raise SingularGram("Gram matrix is degenerate")
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, v: Sequence[int], w: Sequence[int]) -> int:
        """v . w in lattice coordinates."""
        return sum(v[i] * sum(row[j] * w[j] for j in range(len(w))) for i, row in enumerate(self.gram))

    def norm(self, v: Sequence[int]) -> int:
        return self.pair(v, v)

    def negated(self) -> Matrix:
        """Gram matrix of the opposite form, positive definite when the lattice is negative definite."""
        return tuple(tuple(-x for x in row) for row in self.gram)

    def restrict(self, basis: Sequence[Sequence[int]]) -> "GramLattice":
        """Lattice spanned by `basis` (rows, in this lattice's coordinates)."""
        b = [list(r) for r in basis]
        return GramLattice(la.matmul(la.matmul(b, self.gram), la.transpose(b)))

    def __repr__(self) -> str:
        return f"GramLattice({[list(r) for r in self.gram]})"

    # constructors
    @classmethod
    def empty(cls) -> "GramLattice":
        return cls(())

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "GramLattice":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def standard(cls, n: int) -> "GramLattice":
        """The standard negative definite lattice <-1>^n."""
        return cls.diagonal([-1] * n)


def determinant(lat: GramLattice) -> int:
    return la.bareiss_det(lat.gram)


def is_negative_definite(lat: GramLattice) -> bool:
    return la.ldl(lat.negated()) is not None


def require_definite(lat: GramLattice) -> None:
    if not is_negative_definite(lat):
        raise NotDefinite(f"lattice is not negative definite: {lat!r}")


def is_diagonal_standard(lat: GramLattice) -> bool:
    n = lat.rank
    return all(lat.gram[i][j] == (-1 if i == j else 0) for i in range(n) for j in range(n))


def direct_sum(*lats: GramLattice) -> GramLattice:
    n = sum(l.rank for l in lats)
    g = [[0] * n for _ in range(n)]
    off = 0
    for l in lats:
        for i in range(l.rank):
            for j in range(l.rank):
                g[off + i][off + j] = l.gram[i][j]
        off += l.rank
    return GramLattice(g)


def dual_gram(lat: GramLattice) -> RationalGram:
    """Gram matrix of the dual lattice in the dual basis, i.e. the exact inverse."""
    if lat.rank == 0:
        return ()
    if determinant(lat) == 0:
        raise SingularGram("cannot dualize a degenerate lattice")
    return la.rational_inverse(lat.gram)


def complement_basis(lat: GramLattice, vs: Sequence[Sequence[int]]) -> list[list[int]]:
    """Hermite-reduced basis (rows) of {w : w.v = 0 for all v in vs}."""
    a = la.matmul([list(v) for v in vs], [list(r) for r in lat.gram]) if vs else []
    return la.integer_kernel(a, lat.rank)


def orthogonal_complement(lat: GramLattice, vs: Sequence[Sequence[int]]) -> GramLattice:
    basis = complement_basis(lat, vs)
    g = la.matmul(la.matmul(basis, [list(r) for r in lat.gram]), la.transpose(basis))
    if basis and la.bareiss_det(g) == 0:
        raise DegenerateSublattice("pairing restricted to the complement is degenerate")
    return GramLattice(g)


def shortest_vectors(lat: GramLattice, bound: int) -> list[tuple[int, ...]]:
    """Nonzero v with |v.v| <= bound, one of each pair +-v (first nonzero coordinate positive)."""
    require_definite(lat)
    out = []
    for x, _ in enumerate_form(lat.negated(), bound):
        nz = next((c for c in x if c), 0)
        if nz > 0:
            out.append(x)
    out.sort(key=lambda v: (-lat.norm(v), tuple(-c for c in v)))
    return out


def reduce_stable(lat: GramLattice) -> tuple[GramLattice, int]:
    """Split off every <-1> summand: returns (L', m) with L = L' + <-1>^m and L' free of norm -1 vectors."""
    sub, m, _ = reduce_stable_with_basis(lat)
    return sub, m


def reduce_stable_with_basis(lat: GramLattice):
    """Like `reduce_stable` but also returns the basis (rows) of L' inside L.

    Unit vectors in a definite integral lattice are orthogonal unless equal up
    to sign, so all of them split off at once.
    """
    require_definite(lat)
    units = shortest_vectors(lat, 1)
    if not units:
        return lat, 0, la.identity(lat.rank)
    basis = complement_basis(lat, units)
    return lat.restrict(basis), len(units), basis


def pair_reduce(p):
    """Greedy exact pairwise reduction of a positive definite Gram matrix.

    Returns (reduced, u) with reduced = u^T p u, columns of u are the new basis.
    Repeatedly subtracts integer multiples of shorter vectors; every step lowers
    a diagonal entry, so it terminates.
    """
    n = len(p)
    g = [list(r) for r in p]
    u = la.identity(n)  # columns are basis vectors

    def add_multiple(i, j, r):
        # b_i <- b_i - r b_j
        for k in range(n):
            u[k][i] -= r * u[k][j]
        gij = g[i][j]
        gjj = g[j][j]
        for k in range(n):
            if k != i:
                g[i][k] -= r * g[j][k]
                g[k][i] = g[i][k]
        g[i][i] += -2 * r * gij + r * r * gjj

    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j or g[j][j] == 0:
                    continue
                if 2 * abs(g[i][j]) > g[j][j]:
                    r = (2 * g[i][j] + g[j][j]) // (2 * g[j][j])
                    if r:
                        add_multiple(i, j, r)
                        changed = True
    order = sorted(range(n), key=lambda i: (g[i][i], i))
    g = [[g[i][j] for j in order] for i in order]
    u = [[row[j] for j in order] for row in u]
    return g, u


# Dynkin-diagram constructors for negative definite root lattices.

def _from_edges(n, edges, weight=-2):
    g = [[weight if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return GramLattice(g)


def root_lattice(kind: str, n: int) -> GramLattice:
    """Negative definite root lattice -A_n, -D_n or -E_n (n = 6, 7, 8)."""
    kind = kind.upper()
    if kind == "A" and n >= 1:
        return _from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "D" and n >= 4:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return _from_edges(n, edges)
    if kind == "E" and n in (6, 7, 8):
        # chain 0-1-...-(n-2) with the extra node attached to node 2
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
        return _from_edges(n, edges)
    raise ValueError(f"unknown root lattice {kind}{n}")
