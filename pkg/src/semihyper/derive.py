"""Semihypergroups built from a group and a probability measure on it.

With ``M = sum_k m_k G_k`` the cube of the semihypergroup with elements
``e_i = m g_i`` has left matrices ``M_i = G_i M``; its column ``a_{i,j}`` is
the j-th column of ``M_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cube import ConvolutionCube, Measure, StochasticMatrix
from .errors import LengthMismatch
from .groups import CayleyTable, is_uniform_on_subgroup


@dataclass(frozen=True)
class DerivationResult:
    cube: ConvolutionCube
    base_matrix: StochasticMatrix
    left_matrices: tuple[StochasticMatrix, ...]
    degenerate: bool


def _check_lengths(g: CayleyTable, m: Measure) -> None:
    if len(m) != g.order:
        raise LengthMismatch(f"measure length {len(m)} != group order {g.order}")


def base_matrix(g: CayleyTable, m: Measure) -> StochasticMatrix:
    """M = sum_k m_k G_k, where G_k has a 1 at (g_k g_j, j)."""
    _check_lengths(g, m)
    n = g.order
    entries = [[Fraction(0)] * n for _ in range(n)]
    for k, w in enumerate(m.weights):
        if w == 0:
            continue
        row = g.table[k]
        for j in range(n):
            entries[row[j]][j] += w
    return StochasticMatrix(tuple(map(tuple, entries)), "base")


def from_group(g: CayleyTable, m: Measure) -> DerivationResult:
    """Build the cube of (g, m); degenerate cubes are still returned."""
    M = base_matrix(g, m)
    n = g.order
    rows = M.entries
    lefts = []
    for i in range(n):
        # G_i moves row q of M to row g_i g_q
        moved = [None] * n
        for q in range(n):
            moved[g.table[i][q]] = rows[q]
        lefts.append(tuple(moved))
    coeffs = tuple(
        tuple(tuple(lefts[i][k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )
    cube = ConvolutionCube(n, coeffs)
    left_matrices = tuple(StochasticMatrix(mi, "left") for mi in lefts)
    return DerivationResult(cube, M, left_matrices, is_uniform_on_subgroup(g, m))
