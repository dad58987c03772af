"""Acceptance criteria 1-10, each timed against its budget.

Every test appends one PASS/FAIL line to the terminal summary.
"""

import contextlib
import itertools
import random
import time
from fractions import Fraction
from math import gcd

import pytest

from defbound import (
    GramLattice,
    NotQHS,
    SeifertForm,
    SingularGram,
    app_bound,
    char_norm,
    delta,
    determinant,
    dihedral,
    direct_sum,
    embed_in_diagonal,
    enumerate_bounded_set,
    enumerate_definite,
    enumerate_embeddings,
    euler_number,
    find_embedding,
    hj_evaluate,
    hj_expand,
    is_characteristic,
    is_isometric,
    is_negative_definite,
    lemma_app_witness,
    min_char_norm,
    normalize,
    orthogonal_complement,
    plumbing_gram,
    root_lattice,
    unimodular_stable_classes,
)
from defbound.enumeration import BoundedSetQuery
from defbound.seifert import donaldson_test, h1_order, named_forms

from .conftest import ACCEPTANCE_LINES, random_definite

E8 = root_lattice("E", 8)
EMPTY = GramLattice.empty()


@contextlib.contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"criterion {number:>2} {status}  {title} ({elapsed:.1f}s, budget {budget}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_criterion_01_delta_gauntlet():
    with criterion(1, "delta of diagonal, E8 and <-2>", 5):
        for n in range(1, 13):
            assert delta(GramLattice.standard(n)) == 0
        assert delta(E8) == 2
        assert delta(GramLattice([[-2]])) == Fraction(1, 4)


def test_criterion_02_e8_not_diagonal():
    with criterion(2, "E8 has no embedding into <-1>^N, 8 <= N <= 12", 30):
        for n in range(8, 13):
            assert embed_in_diagonal(E8, n) is None


def test_criterion_03_poincare_pipeline():
    with criterion(3, "Poincare sphere plumbing is E8", 5):
        f = normalize(SeifertForm(-2, [(2, 1), (3, 2), (5, 4)]))
        lat = plumbing_gram(f)
        assert lat.rank == 8 and all(lat.gram[i][i] == -2 for i in range(8))
        assert is_isometric(lat, E8) is not None
        assert abs(determinant(lat)) == 1
        e = euler_number(f)
        assert e == Fraction(-1, 30) and e < 0
        assert is_negative_definite(lat)


def test_criterion_04_spherical_obstructions():
    with criterion(4, "T1, O1, I1, I7 fail the diagonal test up to rank + 4", 60):
        for name, f in named_forms().items():
            lat = plumbing_gram(f)
            for n in range(lat.rank, lat.rank + 5):
                assert embed_in_diagonal(lat, n) is None, (name, n)
            assert donaldson_test(lat, slack=4).verdict == "obstructed", name


def test_criterion_05_exceptional_embeddings():
    with criterion(5, "T1 and O1 into E8, I7 into E8 + <-1>", 120):
        forms = named_forms()
        t1, o1, i7 = (plumbing_gram(forms[k]) for k in ("T1", "O1", "I7"))
        assert is_isometric(t1, root_lattice("E", 6)) and is_isometric(o1, root_lattice("E", 7))
        for src, target in ((t1, E8), (o1, E8), (i7, direct_sum(E8, GramLattice.standard(1)))):
            w = find_embedding(src, target)
            assert w is not None and w.verify()


def test_criterion_06_app_witness_exhaustion():
    with criterion(6, "witness below (n+2)p^2/3 for p <= 13, length <= 3", 60):
        for p in (3, 5, 7, 11, 13):
            odd = [x for x in range(-(p - 1), p) if x % 2]
            for length in range(4):
                bound = app_bound(p, length)
                for s in itertools.product(odd, repeat=length):
                    w = lemma_app_witness(p, s)
                    assert w.k % 2 and all(k % 2 == 0 for k in w.ks)
                    assert w.value == w.k ** 2 + sum((w.k * si - p * ki) ** 2 for si, ki in zip(s, w.ks))
                    assert w.value < bound


def _binary_classes(d):
    # GL2(Z) reduced forms 0 <= 2b <= a <= c with ac - b^2 = d
    out = set()
    for a in range(1, d + 1):
        for b in range(0, a // 2 + 1):
            if (d + b * b) % a == 0:
                c = (d + b * b) // a
                if c >= a:
                    out.add((a, b, c))
    return out


def test_criterion_07_enumeration_ground_truth():
    with criterion(7, "rank 2 classes, unimodular rank <= 6 and rank <= 8", 30 * 60):
        for d in range(1, 11):
            got = enumerate_definite(2, d)
            expect = _binary_classes(d)
            assert len(got) == len(expect), d
        assert [g.rank for g in unimodular_stable_classes(6)] == [0]
        got = unimodular_stable_classes(8, Fraction(2))
        assert [g.rank for g in got] == [0, 8]
        assert is_isometric(got.classes[1], E8)


def test_criterion_08_bounded_set():
    with criterion(8, "bounded sets for (<-2>, 0, 1/4, 2) and (0, 0, 0, 1)", 60):
        got = enumerate_bounded_set(BoundedSetQuery(GramLattice([[-2]]), EMPTY, Fraction(1, 4), 2, 4))
        assert got.classes == [GramLattice([[-2]])]
        got = enumerate_bounded_set(BoundedSetQuery(EMPTY, EMPTY, Fraction(0), 1, 4))
        assert got.classes == [EMPTY]


def _random_seifert(rng):
    pairs = []
    for _ in range(rng.randint(0, 4)):
        a = rng.choice([x for x in range(-12, 13) if x])
        b = rng.choice([y for y in range(1, 16) if gcd(a, y) == 1])
        pairs.append((a, b))
    return SeifertForm(rng.randint(-6, 4), pairs)


def test_criterion_09_property_suites():
    with criterion(9, "randomized property suites", 120):
        rng = random.Random(9)
        lats = [random_definite(rng, rng.randint(1, 4), 2) for _ in range(200)]
        for a in lats:
            b = lats[rng.randrange(200)]
            assert delta(direct_sum(a, b)) == delta(a) + delta(b)
            assert delta(direct_sum(a, GramLattice.standard(rng.randint(1, 3)))) == delta(a)

        for a in range(2, 201):
            for b in range(1, a):
                if gcd(a, b) == 1:
                    assert hj_evaluate(hj_expand(a, b)) == Fraction(a, b)

        count = 0
        while count < 500:
            f = _random_seifert(rng)
            try:
                g = normalize(f)
            except NotQHS:
                continue
            count += 1
            e = euler_number(g)
            assert e == euler_number(f)
            if e == 0:
                # e = 0 is exactly the degenerate plumbing
                with pytest.raises(SingularGram):
                    plumbing_gram(g)
                continue
            lat = plumbing_gram(g)
            assert abs(determinant(lat)) == h1_order(g) == h1_order(f)
            assert is_negative_definite(lat) == (e < 0)

        for lat in lats:
            base = min_char_norm(lat).minimizer
            shift = [rng.randint(-3, 3) for _ in range(lat.rank)]
            moved = tuple(x + 2 * s for x, s in zip(base, shift))
            assert is_characteristic(lat, moved)
            assert -char_norm(lat, moved) >= min_char_norm(lat).min_norm


def test_criterion_10_dihedral_plumbings():
    with criterion(10, "D(n, n-1) determinants and diagonal complements", 600):
        for n in range(3, 13):
            assert abs(determinant(plumbing_gram(dihedral(n, n - 1)))) == 4
        for n in range(3, 7):
            lat = plumbing_gram(dihedral(n, n - 1))
            for m in range(4):
                target = GramLattice.standard(n + 1 + m)
                found = enumerate_embeddings(lat, target)
                assert found
                for e in found:
                    assert e.verify()
                    comp = orthogonal_complement(target, e.images())
                    assert is_isometric(comp, GramLattice.standard(m)) is not None
