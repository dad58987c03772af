import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from defbound import (
    BadInput,
    GramLattice,
    ParityViolation,
    app_bound,
    char_norm,
    delta,
    direct_sum,
    is_characteristic,
    lemma_app_witness,
    min_char_norm,
    prime_index_rank_bound,
    root_lattice,
)

from .conftest import definite_lattices


def _delta_brute(gram, box):
    n = len(gram)
    inv = sympy.Matrix(gram).inv()
    best = None
    for xi in itertools.product(range(-box, box + 1), repeat=n):
        if any((xi[i] - gram[i][i]) % 2 for i in range(n)):
            continue
        v = abs(sum(xi[i] * inv[i, j] * xi[j] for i in range(n) for j in range(n)))
        best = v if best is None else min(best, v)
    return (n - Fraction(int(best.p), int(best.q))) / 4


# frozen after agreement with the brute-force search above
@pytest.mark.parametrize("gram,expected", [
    ([[-2, 1], [1, -2]], Fraction(1, 2)),
    ([[-3]], Fraction(1, 6)),
    ([[-5, 0], [0, -2]], Fraction(9, 20)),
    ([[-9, -3], [-3, -2]], Fraction(4, 9)),
    ([[-3, 1, 1], [1, -3, 1], [1, 1, -4]], Fraction(5, 8)),
    (root_lattice("A", 3).gram, Fraction(3, 4)),
    (root_lattice("D", 4).gram, Fraction(1)),
])
def test_delta_known_values(gram, expected):
    assert delta(GramLattice(gram)) == expected
    if len(gram) <= 3:
        assert _delta_brute([list(r) for r in gram], 5) == expected


def test_delta_reference_values():
    assert delta(root_lattice("E", 8)) == 2
    assert delta(GramLattice.diagonal([-2])) == Fraction(1, 4)
    for n in range(1, 13):
        assert delta(GramLattice.standard(n)) == 0
    assert delta(GramLattice.empty()) == 0


def test_char_norm_and_parity():
    lat = GramLattice([[-9, -3], [-3, -2]])
    assert char_norm(lat, (1, 0)) == Fraction(-2, 9)
    assert is_characteristic(lat, (1, 0))
    with pytest.raises(ParityViolation):
        char_norm(lat, (0, 0))


def test_minimizer_is_characteristic():
    res = min_char_norm(root_lattice("E", 7))
    assert is_characteristic(root_lattice("E", 7), res.minimizer)
    assert -char_norm(root_lattice("E", 7), res.minimizer) == res.min_norm


@given(definite_lattices(max_rank=4), definite_lattices(max_rank=3))
@settings(max_examples=40, deadline=None)
def test_delta_additive(a, b):
    assert delta(direct_sum(a, b)) == delta(a) + delta(b)


@given(definite_lattices(max_rank=4), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_delta_stable(a, m):
    assert delta(direct_sum(a, GramLattice.standard(m))) == delta(a)


@given(definite_lattices(max_rank=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_characteristic_coset(lat, shift):
    # adding twice any covector keeps a covector characteristic
    base = min_char_norm(lat).minimizer
    moved = tuple(x + 2 * s for x, s in zip(base, shift))
    assert is_characteristic(lat, moved)
    assert -char_norm(lat, moved) >= min_char_norm(lat).min_norm


def _app_brute(p, s):
    best = None
    for k in range(-p + 2, p - 1, 2):
        total = k * k
        for si in s:
            total += min((k * si - p * ki) ** 2 for ki in range(-2 * p, 2 * p + 1, 2))
        best = total if best is None else min(best, total)
    return best


@pytest.mark.parametrize("p,s,value", [(3, (1,), 2), (5, (1, 3, -3), 20), (7, (), 1), (5, (3,), 10)])
def test_app_witness_examples(p, s, value):
    w = lemma_app_witness(p, s)
    assert w.value == value == _app_brute(p, s)
    assert w.k % 2 and all(ki % 2 == 0 for ki in w.ks)
    assert w.value == w.k ** 2 + sum((w.k * si - p * ki) ** 2 for si, ki in zip(s, w.ks))


def test_app_witness_rejects_bad_input():
    with pytest.raises(BadInput):
        lemma_app_witness(9, (1,))
    with pytest.raises(BadInput):
        lemma_app_witness(5, (2,))
    with pytest.raises(BadInput):
        lemma_app_witness(5, (7,))


def test_app_witness_matches_brute_for_small_primes():
    for p in (3, 5, 7):
        odd = [x for x in range(-(p - 1), p) if x % 2]
        for length in range(3):
            for s in itertools.product(odd, repeat=length):
                assert lemma_app_witness(p, s).value == _app_brute(p, s)


def test_prime_index_bounds():
    assert app_bound(3, 1) == 12
    assert prime_index_rank_bound(Fraction(1, 2), "odd") == 4
    assert prime_index_rank_bound(2, "two") == 8
    with pytest.raises(BadInput):
        prime_index_rank_bound(1, "even")
