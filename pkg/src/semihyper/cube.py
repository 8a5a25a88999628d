"""Convolution cubes of finite semihypergroups.

A cube of size ``n`` stores the coefficients ``a_{i,j}(k)`` of

    e_i * e_j = sum_k a_{i,j}(k) e_k

as ``coeffs[i][j][k]`` (0-based storage).  Every column ``a_{i,j}`` is a
probability vector.  All arithmetic is exact; reported indices are 1-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    IndexOutOfRange,
    InvalidMatrix,
    InvalidMeasure,
    LengthMismatch,
    NegativeCoefficient,
    NotNormalized,
    ShapeMismatch,
)
from .linalg import common_denominator, rank

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Measure:
    """Probability vector on ``n`` states or group elements."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise InvalidMeasure("measure must have at least one weight")
        for idx, x in enumerate(w):
            if x < 0:
                raise InvalidMeasure(f"weight {idx + 1} is negative: {x}")
        total = sum(w, ZERO)
        if total != 1:
            raise InvalidMeasure(f"weights sum to {total}, expected 1")

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, k):
        return self.weights[k]

    def __iter__(self):
        return iter(self.weights)

    @classmethod
    def point(cls, n: int, k: int) -> "Measure":
        """Point mass at 0-based position ``k``."""
        return cls(tuple(ONE if x == k else ZERO for x in range(n)))

    @classmethod
    def uniform(cls, n: int) -> "Measure":
        return cls((Fraction(1, n),) * n)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(k for k, x in enumerate(self.weights) if x != 0)


@dataclass(frozen=True)
class StochasticMatrix:
    """Column-stochastic matrix tagged with where it came from.

    ``orientation`` is one of ``"left"`` (A_i), ``"right"`` (B_i) or ``"base"`` (M).
    """

    entries: tuple[tuple[Fraction, ...], ...]
    orientation: str = "left"

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InvalidMatrix("stochastic matrix must be square and non-empty")
        if self.orientation not in ("left", "right", "base"):
            raise InvalidMatrix(f"unknown orientation {self.orientation!r}")
        for j in range(n):
            col = [rows[k][j] for k in range(n)]
            if any(x < 0 for x in col):
                raise InvalidMatrix(f"column {j + 1} has a negative entry")
            if sum(col, ZERO) != 1:
                raise InvalidMatrix(f"column {j + 1} does not sum to 1")

    @property
    def n(self) -> int:
        return len(self.entries)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.entries


@dataclass(frozen=True)
class ConvolutionCube:
    n: int
    coeffs: tuple = field(repr=False)

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise ShapeMismatch(f"n must be a positive integer, got {n!r}")
        c = self.coeffs
        if len(c) != n or any(len(row) != n for row in c) or any(
            len(col) != n for row in c for col in row
        ):
            raise ShapeMismatch(f"coeffs must have shape {n}x{n}x{n}")
        frozen = tuple(
            tuple(tuple(Fraction(x) for x in col) for col in row) for row in c
        )
        object.__setattr__(self, "coeffs", frozen)
        for i in range(n):
            for j in range(n):
                col = frozen[i][j]
                for k, x in enumerate(col):
                    if x < 0:
                        raise NegativeCoefficient(i + 1, j + 1, k + 1, x)
                total = sum(col, ZERO)
                if total != 1:
                    raise NotNormalized(i + 1, j + 1, total)

    def column(self, i: int, j: int) -> tuple[Fraction, ...]:
        """Column ``a_{i,j}`` for 0-based ``i, j``."""
        return self.coeffs[i][j]

    @cached_property
    def scaled(self) -> tuple[np.ndarray, int]:
        """Integer tensor ``N`` and denominator ``D`` with ``a_{i,j}(k) = N[i,j,k] / D``."""
        values = [x for row in self.coeffs for col in row for x in col]
        d = common_denominator(values)
        arr = np.empty((self.n,) * 3, dtype=object)
        for i, row in enumerate(self.coeffs):
            for j, col in enumerate(row):
                for k, x in enumerate(col):
                    arr[i, j, k] = int(x * d)
        return arr, d

    def to_float(self) -> np.ndarray:
        return np.array(
            [[[float(x) for x in col] for col in row] for row in self.coeffs], dtype=float
        )

    def values(self) -> list[Fraction]:
        return [x for row in self.coeffs for col in row for x in col]


def new_cube(n: int, coeffs: Sequence) -> ConvolutionCube:
    """Validate and freeze an ``n x n x n`` coefficient array.

    Raises ShapeMismatch, NegativeCoefficient or NotNormalized.
    """
    return ConvolutionCube(n, coeffs)


def _check_index(cube: ConvolutionCube, i: int) -> None:
    if not 1 <= i <= cube.n:
        raise IndexOutOfRange(f"index {i} outside 1..{cube.n}")


def left_matrix(cube: ConvolutionCube, i: int) -> StochasticMatrix:
    """A_i: j-th column is a_{i,j}.  ``i`` is 1-based."""
    _check_index(cube, i)
    row = cube.coeffs[i - 1]
    n = cube.n
    return StochasticMatrix(
        tuple(tuple(row[j][k] for j in range(n)) for k in range(n)), "left"
    )


def right_matrix(cube: ConvolutionCube, i: int) -> StochasticMatrix:
    """B_i: j-th column is a_{j,i}.  ``i`` is 1-based."""
    _check_index(cube, i)
    n = cube.n
    c = cube.coeffs
    return StochasticMatrix(
        tuple(tuple(c[j][i - 1][k] for j in range(n)) for k in range(n)), "right"
    )


def convolve(cube: ConvolutionCube, mu: Measure, nu: Measure) -> Measure:
    """Bilinear extension of the convolution to arbitrary measures."""
    n = cube.n
    if len(mu) != n or len(nu) != n:
        raise LengthMismatch(f"measures must have length {n}")
    out = [ZERO] * n
    for i, mi in enumerate(mu.weights):
        if mi == 0:
            continue
        for j, nj in enumerate(nu.weights):
            w = mi * nj
            if w == 0:
                continue
            for k, x in enumerate(cube.coeffs[i][j]):
                out[k] += w * x
    return Measure(tuple(out))


@dataclass(frozen=True)
class Violation:
    """Entry where A_i A_j and sum_k a_{i,j}(k) A_k disagree (1-based)."""

    i: int
    j: int
    position: tuple[int, int]
    lhs: Fraction
    rhs: Fraction


def _associativity_sides(cube: ConvolutionCube):
    n_arr, d = cube.scaled
    # (A_i A_j)[k, m] = sum_p a_{i,p}(k) a_{j,m}(p)
    lhs = np.einsum("ipk,jmp->ijkm", n_arr, n_arr)
    # sum_q a_{i,j}(q) A_q[k, m] = sum_q a_{i,j}(q) a_{q,m}(k)
    rhs = np.einsum("ijq,qmk->ijkm", n_arr, n_arr)
    return lhs, rhs, d * d


def check_associativity(cube: ConvolutionCube) -> list[Violation]:
    """Compare A_i A_j with sum_k a_{i,j}(k) A_k entrywise; empty iff associative."""
    lhs, rhs, dd = _associativity_sides(cube)
    bad = np.argwhere(lhs != rhs)
    out = []
    for i, j, k, m in bad:
        out.append(
            Violation(
                int(i) + 1,
                int(j) + 1,
                (int(k) + 1, int(m) + 1),
                Fraction(lhs[i, j, k, m], dd),
                Fraction(rhs[i, j, k, m], dd),
            )
        )
    return out


def is_associative(cube: ConvolutionCube) -> bool:
    lhs, rhs, _ = _associativity_sides(cube)
    return bool(np.all(lhs == rhs))


def left_rows(cube: ConvolutionCube, i: int) -> list[tuple[Fraction, ...]]:
    """Rows of A_{i+1} for 0-based ``i``."""
    n = cube.n
    row = cube.coeffs[i]
    return [tuple(row[j][k] for j in range(n)) for k in range(n)]


def right_rows(cube: ConvolutionCube, i: int) -> list[tuple[Fraction, ...]]:
    n = cube.n
    c = cube.coeffs
    return [tuple(c[j][i][k] for j in range(n)) for k in range(n)]


@dataclass(frozen=True)
class ConditionAReport:
    distinct_left_rows: int
    distinct_right_rows: int
    left_ranks: tuple[int, ...]
    right_ranks: tuple[int, ...]
    holds: bool


def check_condition_A(cube: ConvolutionCube) -> ConditionAReport:
    """Count distinct rows over all A_i (and all B_i) and the exact rank of each."""
    n = cube.n
    lrows = [left_rows(cube, i) for i in range(n)]
    rrows = [right_rows(cube, i) for i in range(n)]
    dl = len({r for rows in lrows for r in rows})
    dr = len({r for rows in rrows for r in rows})
    lr = tuple(rank(rows) for rows in lrows)
    rr = tuple(rank(rows) for rows in rrows)
    holds = dl == n and dr == n and all(x == n for x in lr + rr)
    return ConditionAReport(dl, dr, lr, rr, holds)


@dataclass(frozen=True)
class StructureReport:
    distinct_values: tuple[tuple[Fraction, int], ...]
    values_sum_to_one: bool
    row_multisets_uniform: bool
    column_multisets_uniform: bool
    diagonals_constant: bool
    theorem1_profile: bool

    @property
    def distinct_count(self) -> int:
        return len(self.distinct_values)


def structure_report(cube: ConvolutionCube) -> StructureReport:
    """Value multisets of rows/columns, and diagonal constancy of every A_i and B_i."""
    n = cube.n
    counts = Counter(cube.values())
    distinct = tuple(sorted(counts.items()))
    sums_one = sum((v for v, _ in distinct), ZERO) == 1

    row_sets = set()
    for i in range(n):
        for r in left_rows(cube, i) + right_rows(cube, i):
            row_sets.add(tuple(sorted(r)))
    col_sets = {tuple(sorted(cube.coeffs[i][j])) for i in range(n) for j in range(n)}
    rows_uniform = len(row_sets) == 1
    cols_uniform = len(col_sets) == 1 and (not rows_uniform or col_sets == row_sets)

    diag_ok = True
    for i in range(n):
        left_diag = {cube.coeffs[i][j][j] for j in range(n)}
        right_diag = {cube.coeffs[j][i][j] for j in range(n)}
        if len(left_diag) != 1 or len(right_diag) != 1:
            diag_ok = False
            break

    profile = len(distinct) == n and sums_one and rows_uniform and cols_uniform
    return StructureReport(distinct, sums_one, rows_uniform, cols_uniform, diag_ok, profile)
