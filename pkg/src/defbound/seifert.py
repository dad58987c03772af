"""Seifert fibered rational homology spheres: normal forms, plumbings, obstructions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .charvec import delta
from .embedding import EmbeddingMatrix, embed_in_diagonal, saturation_rank
from .errors import BadFraction, NotDefinite, NotNormal, NotQHS, SearchCapExceeded
from .lattice import GramLattice, determinant, is_negative_definite

# correction terms known without computation; anything else is user input
KNOWN_D = {"poincare": Fraction(2)}


@dataclass(frozen=True)
class SeifertForm:
    e0: int
    pairs: tuple[tuple[int, int], ...]

    def __init__(self, e0: int, pairs: Sequence[Sequence[int]] = ()):
        ps = tuple((int(a), int(b)) for a, b in pairs)
        for a, b in ps:
            if b <= 0:
                raise BadFraction(f"pair ({a}, {b}): b must be positive")
            if gcd(a, b) != 1:
                raise BadFraction(f"pair ({a}, {b}) is not coprime")
        object.__setattr__(self, "e0", int(e0))
        object.__setattr__(self, "pairs", ps)

    @property
    def k(self) -> int:
        return len(self.pairs)

    def is_normal(self) -> bool:
        return all(a > b > 0 for a, b in self.pairs)

    def __str__(self):
        inner = ",".join(f"({a},{b})" for a, b in self.pairs)
        return f"M({self.e0};{inner})" if inner else f"M({self.e0};)"


@dataclass(frozen=True)
class PlumbingGraph:
    center_weight: int
    arms: tuple[tuple[int, ...], ...]


def _require_normal(f: SeifertForm):
    if not f.is_normal():
        raise NotNormal(f"{f} is not in normal form")


def hj_expand(a: int, b: int) -> list[int]:
    """Hirzebruch-Jung expansion a/b = c1 - 1/(c2 - ...), all c_j >= 2."""
    if not (a > b > 0) or gcd(a, b) != 1:
        raise BadFraction(f"need a > b > 0 coprime, got ({a}, {b})")
    out = []
    while b:
        c = -(-a // b)
        out.append(c)
        a, b = b, c * b - a
    return out


def hj_evaluate(coeffs: Sequence[int]) -> Fraction:
    if not coeffs:
        raise BadFraction("empty continued fraction")
    x = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        x = c - 1 / x
    return x


def normalize(f: SeifertForm) -> SeifertForm:
    """Canonical form with a > b > 0 for every pair.

    Pairs with a = +-1 are absorbed into e0, negative a is made positive by
    flipping both signs (the same fibre data), then each pair is twisted so that
    0 < b < a, left to right.
    """
    e0 = f.e0
    pairs = []
    for a, b in f.pairs:
        if a == 0:
            raise NotQHS(f"pair ({a}, {b}) has a = 0")
        if a < 0:
            a, b = -a, -b
        n = b // a  # b - n a lands in [0, a)
        e0 += n
        b -= n * a
        if a == 1:
            continue  # b is now 0: the pair is a regular fibre
        pairs.append((a, b))
    return SeifertForm(e0, pairs)


def euler_number(f: SeifertForm) -> Fraction:
    return f.e0 + sum((Fraction(b, a) for a, b in f.pairs), Fraction(0))


def reverse_orientation(f: SeifertForm) -> SeifertForm:
    _require_normal(f)
    return normalize(SeifertForm(-f.e0 - f.k, [(a, a - b) for a, b in f.pairs]))


def plumbing_graph(f: SeifertForm) -> PlumbingGraph:
    _require_normal(f)
    return PlumbingGraph(f.e0, tuple(tuple(-c for c in hj_expand(a, b)) for a, b in f.pairs))


def plumbing_gram(f: SeifertForm) -> GramLattice:
    """Star-shaped plumbing: centre of weight e0, one chain per pair."""
    graph = plumbing_graph(f)
    n = 1 + sum(len(arm) for arm in graph.arms)
    g = [[0] * n for _ in range(n)]
    g[0][0] = graph.center_weight
    pos = 1
    for arm in graph.arms:
        prev = 0
        for w in arm:
            g[pos][pos] = w
            g[pos][prev] = g[prev][pos] = 1
            prev = pos
            pos += 1
    return GramLattice(g)


@dataclass(frozen=True)
class SphericalType:
    family: str  # C, D, T, O or I
    reversed: bool  # matched after reversing orientation
    form: SeifertForm  # the matched form, e0 <= -2 except for type C


def _match_family(f: SeifertForm) -> Optional[str]:
    ps = sorted(f.pairs)
    if f.k <= 1:
        return "C"
    if f.e0 > -2:
        return None
    if f.k == 2:
        return "C"  # two exceptional fibres over S^2 give a lens space
    if f.k != 3:
        return None
    a = [p[0] for p in ps]
    if ps[0] == (2, 1) and ps[1] == (2, 1):
        return "D"
    if a[0] == 2 and ps[0] == (2, 1) and a[1] == 3 and a[2] in (3, 4, 5):
        return {3: "T", 4: "O", 5: "I"}[a[2]]
    return None


def classify_spherical(f: SeifertForm) -> Optional[SphericalType]:
    """Spherical family of f (or of -f), or None."""
    _require_normal(f)
    fam = _match_family(f)
    if fam is not None:
        return SphericalType(fam, False, f)
    g = reverse_orientation(f)
    fam = _match_family(g)
    if fam is not None:
        return SphericalType(fam, True, g)
    return None


def dihedral(n: int, q: int) -> SeifertForm:
    """The dihedral manifold M(-b; (2,1), (2,1), (q, bq - n)) with b the first HJ coefficient of n/q."""
    if not (1 < q < n) or gcd(n, q) != 1:
        raise BadFraction(f"need 1 < q < n coprime, got ({n}, {q})")
    b = hj_expand(n, q)[0]
    return normalize(SeifertForm(-b, [(2, 1), (2, 1), (q, b * q - n)]))


def both_definite_sufficient(f: SeifertForm) -> bool:
    _require_normal(f)
    return f.e0 + f.k <= 0


def named_forms() -> dict[str, SeifertForm]:
    return {
        "T1": SeifertForm(-2, [(2, 1), (3, 2), (3, 2)]),
        "O1": SeifertForm(-2, [(2, 1), (3, 2), (4, 3)]),
        "I1": SeifertForm(-2, [(2, 1), (3, 2), (5, 4)]),
        "I7": SeifertForm(-2, [(2, 1), (3, 2), (5, 3)]),
    }


@dataclass(frozen=True)
class DonaldsonVerdict:
    verdict: str  # embeds, obstructed or cap_exceeded
    ranks_checked: tuple[int, ...]
    witness: Optional[EmbeddingMatrix] = None


def donaldson_test(lat: GramLattice, slack: int = 4, max_nodes: Optional[int] = None) -> DonaldsonVerdict:
    """Does lat embed in <-1>^N for some N? Tries N = rank..rank+slack, then the saturation rank.

    Beyond the saturation rank extra coordinates cannot help, so a failure there
    is definitive; the sweep is only to find the smallest N.
    """
    checked = []
    try:
        for N in range(lat.rank, lat.rank + slack + 1):
            checked.append(N)
            e = embed_in_diagonal(lat, N, max_nodes=max_nodes)
            if e is not None:
                return DonaldsonVerdict("embeds", tuple(checked), e)
        sat = saturation_rank(lat)
        if sat > checked[-1]:
            checked.append(sat)
            e = embed_in_diagonal(lat, sat, max_nodes=max_nodes)
            if e is not None:
                return DonaldsonVerdict("embeds", tuple(checked), e)
    except SearchCapExceeded:
        return DonaldsonVerdict("cap_exceeded", tuple(checked))
    return DonaldsonVerdict("obstructed", tuple(checked))


@dataclass(frozen=True)
class ObstructionReport:
    normal_form: SeifertForm
    euler: Fraction
    h1_order: int
    gram: GramLattice
    delta: Fraction
    delta_bound_used: Optional[Fraction]
    delta_ok: Optional[bool]
    donaldson_positive_side: str
    donaldson_ranks: tuple[int, ...]
    both_definite_sufficient: bool
    witness: Optional[EmbeddingMatrix] = None


def h1_order(f: SeifertForm) -> int:
    """|H_1| = |e| a_1 ... a_k."""
    g = normalize(f)
    e = euler_number(g)
    prod = 1
    for a, _ in g.pairs:
        prod *= a
    val = abs(e) * prod
    assert val.denominator == 1
    return int(val)


def obstruction_report(f: SeifertForm, dY: Optional[Fraction] = None, slack: int = 4,
                       max_nodes: Optional[int] = None) -> ObstructionReport:
    """Collect the lattice obstructions for a Seifert space oriented so that e < 0.

    The Donaldson test runs on the canonical negative definite plumbing. If it
    cannot embed in any diagonal lattice, Y bounds no positive definite smooth
    4-manifold (glue the two pieces along Y).
    """
    nf = normalize(f)
    e = euler_number(nf)
    if e == 0:
        raise NotQHS(f"{f} has Euler number 0")
    lat = plumbing_gram(nf)
    if not is_negative_definite(lat):
        raise NotDefinite(f"{nf} has Euler number {e} >= 0; reverse the orientation first")
    d = delta(lat)
    dy = None if dY is None else Fraction(dY)
    ver = donaldson_test(lat, slack=slack, max_nodes=max_nodes)
    return ObstructionReport(
        normal_form=nf,
        euler=e,
        h1_order=abs(determinant(lat)),
        gram=lat,
        delta=d,
        delta_bound_used=dy,
        delta_ok=None if dy is None else d <= dy,
        donaldson_positive_side=ver.verdict,
        donaldson_ranks=ver.ranks_checked,
        both_definite_sufficient=both_definite_sufficient(nf),
        witness=ver.witness,
    )
