import random

import pytest
from hypothesis import strategies as st

from defbound import GramLattice
from defbound._linalg import bareiss_det, matmul, transpose

ACCEPTANCE_LINES: list[str] = []


def random_definite(rng: random.Random, rank: int, spread: int = 2) -> GramLattice:
    """-B^T B for a random nonsingular integer B."""
    while True:
        b = [[rng.randint(-spread, spread) for _ in range(rank)] for _ in range(rank)]
        if rank == 0 or bareiss_det(b):
            g = matmul(transpose(b), b)
            return GramLattice([[-x for x in row] for row in g])


@st.composite
def definite_lattices(draw, max_rank=4, spread=2):
    rank = draw(st.integers(1, max_rank))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_definite(random.Random(seed), rank, spread)


def random_unimodular(rng: random.Random, n: int, steps: int = 12):
    """Product of elementary integer matrices (columns mixed), determinant +-1."""
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            u = [[-x if c == 0 else x for c, x in enumerate(row)] for row in u]
            continue
        r = rng.choice([-2, -1, 1, 2])
        for row in u:
            row[i] += r * row[j]
    return u


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240611)
