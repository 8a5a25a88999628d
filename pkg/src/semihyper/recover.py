"""Recover a group and a measure from a convolution cube.

Two routes are tried.  The slice route reads a binary operation off the
positions carrying one coefficient value.  The quotient route forms
``P_i = A_i A_1^{-1}``.  Every answer is certified by rebuilding the cube
from the candidate pair and comparing exactly.  Recovery fails by refusing,
never by returning a wrong pair.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .cube import (
    ConvolutionCube,
    Measure,
    check_associativity,
    check_condition_A,
    left_rows,
)
from .derive import from_group
from .errors import (
    NotAssociative,
    NotClosed,
    NotDerivable,
    NotLatinSquare,
    NotPermutation,
    SingularA1,
    SizeMismatch,
)
from .groups import CayleyTable, is_isomorphic
from .linalg import inverse, matmul, rank

SLICE = "slice"
FALLBACK = "quotient-fallback"


@dataclass(frozen=True)
class SliceRelation:
    """Positions (1-based triples) where the cube equals ``value``.

    ``is_operation``: every (i, j) has exactly one k.  ``is_latin``: the
    operation is also left and right solvable (each row and column a permutation).
    """

    n: int
    value: Fraction
    triples: frozenset[tuple[int, int, int]]
    is_operation: bool
    is_latin: bool

    def operation(self) -> tuple[tuple[int, ...], ...]:
        """0-based table op[i][j] = k; only valid when ``is_operation``."""
        op = [[0] * self.n for _ in range(self.n)]
        for i, j, k in self.triples:
            op[i - 1][j - 1] = k - 1
        return tuple(map(tuple, op))


@dataclass(frozen=True)
class RecoveryResult:
    group: CayleyTable
    measure: Measure
    identity_index: int
    method: str
    certified: bool
    diagnostics: str = ""


def value_slices(cube: ConvolutionCube) -> list[SliceRelation]:
    """One relation per distinct coefficient value, in increasing value order."""
    n = cube.n
    by_value = defaultdict(set)
    for i in range(n):
        for j in range(n):
            for k, x in enumerate(cube.coeffs[i][j]):
                by_value[x].add((i + 1, j + 1, k + 1))
    out = []
    full = set(range(1, n + 1))
    for value in sorted(by_value):
        triples = frozenset(by_value[value])
        per_pair = defaultdict(list)
        for i, j, k in triples:
            per_pair[(i, j)].append(k)
        is_op = len(per_pair) == n * n and all(len(v) == 1 for v in per_pair.values())
        latin = False
        if is_op:
            # conditions "for any i,k some j" and "for any j,k some i"
            rows = defaultdict(set)
            cols = defaultdict(set)
            for i, j, k in triples:
                rows[i].add(k)
                cols[j].add(k)
            latin = all(rows[i] == full for i in full) and all(cols[j] == full for j in full)
        out.append(SliceRelation(n, value, triples, is_op, latin))
    return out


def slice_to_group(s: SliceRelation) -> CayleyTable:
    """Group whose product is op(i, j) = k; associativity is checked, not assumed."""
    if not s.is_operation:
        raise NotDerivable(f"slice at value {s.value} is not a binary operation")
    return CayleyTable(s.operation())


def verify_recovery(cube: ConvolutionCube, g: CayleyTable, m: Measure) -> bool:
    """Exact certificate: the cube rebuilt from (g, m) equals ``cube``."""
    if g.order != cube.n or len(m) != cube.n:
        raise SizeMismatch(f"cube n={cube.n}, group order {g.order}, measure length {len(m)}")
    return from_group(g, m).cube.coeffs == cube.coeffs


def _diagonal_measure(cube: ConvolutionCube, t: int) -> Measure:
    return Measure(cube.coeffs[t][t])


def _slice_candidates(cube, slices):
    found = []
    notes = []
    for s in slices:
        if not s.is_operation:
            continue
        try:
            g = slice_to_group(s)
        except (NotLatinSquare, NotAssociative) as exc:
            notes.append(f"slice {s.value}: {exc}")
            continue
        iota = g.identity
        m_hat = _diagonal_measure(cube, iota)
        if verify_recovery(cube, g, m_hat):
            found.append((iota, s.value, g, m_hat))
        else:
            notes.append(f"slice {s.value}: reconstruction mismatch")
    return found, notes


def recover_group(cube: ConvolutionCube, strict: bool = True) -> RecoveryResult:
    """Decide whether ``cube`` comes from a group and return a certified pair.

    With ``strict`` (default) cubes failing condition (A) are refused even if
    they happen to be reconstructible; this keeps the result within the
    hypothesis under which derivation is guaranteed to be detected.
    Raises NotAssociative, SingularA1 or NotDerivable.
    """
    violations = check_associativity(cube)
    if violations:
        v = violations[0]
        raise NotAssociative(
            v.i, v.j, v.position, f"{len(violations)} entries of A_i A_j differ"
        )
    n = cube.n
    notes = []
    if strict:
        report = check_condition_A(cube)
        if not report.holds:
            if report.left_ranks[0] < n:
                raise SingularA1(f"rank A_1 = {report.left_ranks[0]} < {n}")
            raise NotDerivable(f"condition (A) fails: {report}")

    found, slice_notes = _slice_candidates(cube, value_slices(cube))
    notes.extend(slice_notes)
    if found:
        found.sort(key=lambda c: (c[0], c[1]))
        iota, value, g, m_hat = found[0]
        for _, other_value, h, _ in found[1:]:
            if not is_isomorphic(g, h):
                notes.append(f"slice groups at {value} and {other_value} are not isomorphic")
        notes.insert(0, f"{len(found)} slice(s) certified; chose value {value}")
        return RecoveryResult(g, m_hat, iota + 1, SLICE, True, "; ".join(notes))

    try:
        result = recover_fallback(cube)
    except NotDerivable as exc:
        if type(exc) is NotDerivable:
            raise NotDerivable("; ".join(notes + [f"fallback: {exc}"])) from exc
        raise
    diag = "; ".join(["no slice certified"] + notes + [result.diagnostics])
    return RecoveryResult(
        result.group, result.measure, result.identity_index, FALLBACK, True, diag
    )


def _isotope(t_table: CayleyTable, t: int) -> CayleyTable:
    """Group on the same set with x o y = x t^-1 y, whose identity is ``t``."""
    n = t_table.order
    tinv = t_table.inverse(t)
    tab = t_table.table
    return CayleyTable(tuple(tuple(tab[tab[x][tinv]][y] for y in range(n)) for x in range(n)))


def recover_fallback(cube: ConvolutionCube) -> RecoveryResult:
    """Quotient route: P_i = A_i A_1^{-1} must be permutation matrices forming a group."""
    n = cube.n
    a = [left_rows(cube, i) for i in range(n)]
    if rank(a[0]) < n:
        raise SingularA1(f"rank A_1 = {rank(a[0])} < {n}")
    a1_inv = inverse(a[0])

    perms = []
    for i in range(n):
        p = matmul(a[i], a1_inv)
        images = []
        for j in range(n):
            col = [p[k][j] for k in range(n)]
            ones = [k for k, x in enumerate(col) if x == 1]
            if len(ones) != 1 or any(x not in (0, 1) for x in col):
                raise NotPermutation(i + 1)
            images.append(ones[0])
        if len(set(images)) != n:
            raise NotPermutation(i + 1)
        perms.append(tuple(images))
    if len(set(perms)) != n:
        raise NotDerivable("two left matrices coincide")

    lookup = {p: i for i, p in enumerate(perms)}
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = tuple(perms[i][x] for x in perms[j])
            if prod not in lookup:
                raise NotClosed(i + 1, j + 1)
            row.append(lookup[prod])
        table.append(tuple(row))
    try:
        quotient = CayleyTable(tuple(table))
    except (NotLatinSquare, NotAssociative) as exc:
        raise NotDerivable(f"quotient table is not a group: {exc}") from exc

    for t in range(n):
        g = _isotope(quotient, t)
        m_hat = _diagonal_measure(cube, t)
        if verify_recovery(cube, g, m_hat):
            return RecoveryResult(
                g, m_hat, t + 1, FALLBACK, True, f"certified with identity candidate {t + 1}"
            )
    raise NotDerivable("no identity candidate reconstructs the cube")
