"""Exact linear algebra over the rationals.

Matrices are plain nested sequences of ``Fraction`` (or ``int``).  Rank uses
fraction-free (Bareiss) elimination on an integer rescaling of the input, so
no intermediate fractions are ever formed.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.  Floats are rejected."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"rational expected, got {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational expected, got {text!r}")
    s = text.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def common_denominator(values) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def to_integer_rows(matrix: Matrix) -> list[list[int]]:
    """Scale each row by its own common denominator (rank preserving)."""
    out = []
    for row in matrix:
        d = common_denominator(row)
        out.append([int(Fraction(v) * d) for v in row])
    return out


def rank(matrix: Matrix) -> int:
    """Exact rank via Bareiss fraction-free elimination."""
    m = to_integer_rows(matrix)
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        pivot = next((p for p in range(r, rows) if m[p][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        piv = m[r][c]
        for i in range(r + 1, rows):
            lead = m[i][c]
            for j in range(c + 1, cols):
                m[i][j] = (m[i][j] * piv - lead * m[r][j]) // prev
            m[i][c] = 0
        prev = piv
        r += 1
    return r


def inverse(matrix: Matrix) -> list[list[Fraction]]:
    """Gauss-Jordan inverse in exact arithmetic.  Raises ZeroDivisionError if singular."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = next((p for p in range(c, n) if a[p][c] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[pivot] = a[pivot], a[c]
        inv_piv = 1 / a[c][c]
        a[c] = [v * inv_piv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def matmul(a: Matrix, b: Matrix) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
