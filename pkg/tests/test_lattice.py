import itertools
import random

import pytest
import sympy
from hypothesis import given, settings

from defbound import (
    DegenerateSublattice,
    GramLattice,
    NotDefinite,
    SingularGram,
    determinant,
    direct_sum,
    dual_gram,
    is_negative_definite,
    orthogonal_complement,
    reduce_stable,
    root_lattice,
    shortest_vectors,
)
from defbound._linalg import hnf_rows, integer_kernel, matmul
from defbound.lattice import pair_reduce, reduce_stable_with_basis

from .conftest import definite_lattices


def test_construction_rejects_bad_matrices():
    with pytest.raises(ValueError):
        GramLattice([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        GramLattice([[1, 2]])
    with pytest.raises(SingularGram):
        GramLattice([[-1, -1], [-1, -1]])


def test_empty_lattice():
    e = GramLattice.empty()
    assert e.rank == 0
    assert determinant(e) == 1
    assert is_negative_definite(e)
    assert reduce_stable(e) == (e, 0)


@pytest.mark.parametrize("kind,n,det", [("A", 1, -2), ("A", 2, 3), ("A", 3, -4), ("D", 4, 4),
                                        ("D", 5, -4), ("E", 6, 3), ("E", 7, -2), ("E", 8, 1)])
def test_root_lattice_determinants(kind, n, det):
    # sign (-1)^n times the classical positive determinant
    lat = root_lattice(kind, n)
    assert determinant(lat) == det
    assert is_negative_definite(lat)


@given(definite_lattices(max_rank=5, spread=3))
@settings(max_examples=60, deadline=None)
def test_determinant_matches_sympy(lat):
    assert determinant(lat) == sympy.Matrix(lat.gram).det()


def test_definiteness():
    assert is_negative_definite(GramLattice([[-2, 1], [1, -2]]))
    assert not is_negative_definite(GramLattice([[-1, 2], [2, -1]]))
    assert not is_negative_definite(GramLattice([[1]]))
    with pytest.raises(NotDefinite):
        shortest_vectors(GramLattice([[1]]), 2)


def test_dual_gram_is_inverse():
    lat = GramLattice([[-9, -3], [-3, -2]])
    inv = dual_gram(lat)
    prod = matmul([list(r) for r in lat.gram], [list(r) for r in inv])
    assert prod == [[1, 0], [0, 1]]


def _brute_short(lat, bound, box=3):
    out = set()
    for v in itertools.product(range(-box, box + 1), repeat=lat.rank):
        if any(v) and -lat.norm(v) <= bound:
            nz = next(c for c in v if c)
            out.add(v if nz > 0 else tuple(-c for c in v))
    return out


@pytest.mark.parametrize("gram,bound", [
    ([[-2, 1], [1, -2]], 2),
    ([[-3, 1, 1], [1, -3, 1], [1, 1, -4]], 4),
    ([[-2, 1, 0], [1, -2, 1], [0, 1, -2]], 4),
    ([[-5, 2], [2, -3]], 6),
])
def test_shortest_vectors_brute(gram, bound):
    lat = GramLattice(gram)
    assert set(shortest_vectors(lat, bound)) == _brute_short(lat, bound)


def test_root_counts():
    assert len(shortest_vectors(root_lattice("E", 8), 2)) == 120
    assert len(shortest_vectors(root_lattice("E", 7), 2)) == 63
    assert len(shortest_vectors(root_lattice("E", 6), 2)) == 36
    assert len(shortest_vectors(root_lattice("D", 4), 2)) == 12


def test_reduce_stable_examples():
    lat = GramLattice([[-1, 0, 0], [0, -2, 1], [0, 1, -2]])
    sub, m = reduce_stable(lat)
    assert m == 1 and determinant(sub) == 3 and sub.rank == 2
    sub, m = reduce_stable(GramLattice.standard(5))
    assert m == 5 and sub.rank == 0
    # a hidden unit vector: (1, 1) has norm -1
    sub, m = reduce_stable(GramLattice([[-2, 1], [1, -1]]))
    assert m >= 1


@given(definite_lattices(max_rank=4))
@settings(max_examples=60, deadline=None)
def test_reduce_stable_splits(lat):
    sub, m, basis = reduce_stable_with_basis(lat)
    assert sub.rank + m == lat.rank
    assert abs(determinant(sub)) == abs(determinant(lat))
    assert not shortest_vectors(sub, 1)
    assert sub == lat.restrict(basis)


def test_orthogonal_complement():
    z3 = GramLattice.standard(3)
    comp = orthogonal_complement(z3, [(1, 1, 1)])
    assert comp.rank == 2 and determinant(comp) == 3
    with pytest.raises(DegenerateSublattice):
        orthogonal_complement(GramLattice([[0, 1], [1, 0]]), [(1, 0)])


def test_pair_reduce_is_basis_change():
    rng = random.Random(3)
    for _ in range(20):
        b = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        if sympy.Matrix(b).det() == 0:
            continue
        p = matmul([list(r) for r in zip(*b)], b)
        g, u = pair_reduce(p)
        assert abs(sympy.Matrix(u).det()) == 1
        assert matmul(matmul([list(r) for r in zip(*u)], p), u) == g
        assert [g[i][i] for i in range(3)] == sorted(g[i][i] for i in range(3))


def test_hnf_and_kernel():
    h, u = hnf_rows([[2, 4], [1, 3]])
    assert matmul(u, [[2, 4], [1, 3]]) == h
    k = integer_kernel([[1, 1, 1]], 3)
    assert len(k) == 2 and all(sum(row) == 0 for row in k)


def test_direct_sum():
    s = direct_sum(GramLattice([[-2]]), GramLattice.standard(2))
    assert s.gram == ((-2, 0, 0), (0, -1, 0), (0, 0, -1))
    assert direct_sum().rank == 0
