"""Shared oracles and helpers.

The oracles here deliberately avoid the package's own algorithms: associativity
is checked triple by triple, derived cubes come from the closed form
a_{i,j}(k) = m(g_i^-1 g_k g_j^-1), isomorphism is tested over all bijections.
"""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from semihyper.cube import ConvolutionCube, Measure

F = Fraction

ACCEPTANCE_LINES = []
OBSERVATIONS = []


def pytest_terminal_summary(terminalreporter):
    if OBSERVATIONS:
        terminalreporter.section("recorded observations")
        for line in OBSERVATIONS:
            terminalreporter.write_line(line)
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def brute_force_associative(cube: ConvolutionCube) -> bool:
    """Compare (e_i*e_j)*e_m with e_i*(e_j*e_m) for all n^3 triples."""
    n = cube.n
    a = cube.coeffs
    for i in range(n):
        for j in range(n):
            for m in range(n):
                left = [F(0)] * n
                for k in range(n):
                    w = a[i][j][k]
                    for r in range(n):
                        left[r] += w * a[k][m][r]
                right = [F(0)] * n
                for p in range(n):
                    w = a[j][m][p]
                    for r in range(n):
                        right[r] += w * a[i][p][r]
                if left != right:
                    return False
    return True


def closed_form_cube(g, m) -> ConvolutionCube:
    n = g.order
    t = g.table
    coeffs = [
        [[m[t[t[g.inverse(i)][k]][g.inverse(j)]] for k in range(n)] for j in range(n)]
        for i in range(n)
    ]
    return ConvolutionCube(n, coeffs)


def brute_isomorphic(g, h) -> bool:
    n = g.order
    e, f = g.identity, h.identity
    rest_g = [a for a in range(n) if a != e]
    for perm in itertools.permutations([b for b in range(n) if b != f]):
        phi = [0] * n
        phi[e] = f
        for a, b in zip(rest_g, perm):
            phi[a] = b
        if all(phi[g.table[a][b]] == h.table[phi[a]][phi[b]] for a in range(n) for b in range(n)):
            return True
    return False


def generic_measure(n: int, rng: random.Random, top: int = 60) -> Measure:
    """Full support, pairwise distinct weights."""
    w = rng.sample(range(1, top + 1), n)
    s = sum(w)
    return Measure(tuple(F(x, s) for x in w))


def random_measure(n: int, rng: random.Random, top: int = 6) -> Measure:
    w = [rng.randint(0, top) for _ in range(n)]
    if sum(w) == 0:
        w[rng.randrange(n)] = 1
    s = sum(w)
    return Measure(tuple(F(x, s) for x in w))


def left_absorbing_cube(n: int) -> ConvolutionCube:
    col = tuple(F(int(k == 0)) for k in range(n))
    return ConvolutionCube(n, [[col] * n for _ in range(n)])


def uniform_cube(n: int) -> ConvolutionCube:
    col = (F(1, n),) * n
    return ConvolutionCube(n, [[col] * n for _ in range(n)])


@st.composite
def measures(draw, n, generic=False):
    if generic:
        w = draw(st.lists(st.integers(1, 50), min_size=n, max_size=n, unique=True))
    else:
        w = draw(st.lists(st.integers(0, 9), min_size=n, max_size=n).filter(lambda x: sum(x) > 0))
    s = sum(w)
    return Measure(tuple(F(x, s) for x in w))


@pytest.fixture
def z2_cube():
    third = F(1, 3)
    two = F(2, 3)
    return ConvolutionCube(
        2,
        [[(two, third), (third, two)], [(third, two), (two, third)]],
    )
