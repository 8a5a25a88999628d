"""Second-order Markov event streams driven by a convolution cube.

The next event after the pair (e_{t-1}, e_t) = (i, j) is drawn from the
column a_{i,j}.  Random numbers come from numpy's PCG64 bit generator
(seeded), so streams are reproducible across platforms.

Estimated cubes are exact rationals (counts / totals).  ``snap_to_rational``
rounds them to nearby columns with small denominators, after which the exact
recovery machinery applies.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cube import ConvolutionCube, check_associativity
from .errors import BadLength, BadStart, EmptyStream, SemihyperError
from .recover import RecoveryResult, recover_group


@dataclass(frozen=True)
class EventStream:
    """Events are symbols ``1..alphabet_size``."""

    alphabet_size: int
    events: tuple[int, ...]
    seed: int | None = None

    def __post_init__(self):
        ev = tuple(int(x) for x in self.events)
        object.__setattr__(self, "events", ev)
        n = self.alphabet_size
        if n < 1:
            raise ValueError("alphabet size must be positive")
        for t, x in enumerate(ev):
            if not 1 <= x <= n:
                raise ValueError(f"event {t + 1} = {x} outside 1..{n}")

    def __len__(self):
        return len(self.events)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def simulate(cube: ConvolutionCube, start: tuple[int, int], length: int, seed: int) -> EventStream:
    """Emit ``start`` then sample each next event from a_{previous two}."""
    n = cube.n
    if length < 2:
        raise BadLength(f"length must be at least 2, got {length}")
    if len(start) != 2 or not all(1 <= s <= n for s in start):
        raise BadStart(f"start pair {start!r} must lie in 1..{n}")

    # per column: cumulative numerators over the column's own denominator
    tables = {}
    for i in range(n):
        for j in range(n):
            col = cube.coeffs[i][j]
            d = math.lcm(*(x.denominator for x in col))
            cum, acc = [], 0
            for x in col:
                acc += int(x * d)
                cum.append(acc)
            tables[i, j] = (d, cum)

    uniforms = rng_for(seed).random(length - 2)
    events = [start[0] - 1, start[1] - 1]
    a, b = events
    for u in uniforms:
        d, cum = tables[a, b]
        r = min(int(u * d), d - 1)
        k = bisect.bisect_right(cum, r)
        events.append(k)
        a, b = b, k
    return EventStream(n, tuple(e + 1 for e in events), seed)


@dataclass(frozen=True, eq=False)
class EstimatedCube:
    n: int
    counts: np.ndarray
    cube: ConvolutionCube
    pair_support: np.ndarray
    smoothing: Fraction = field(default=Fraction(0))


def estimate_cube(stream: EventStream, smoothing=Fraction(0)) -> EstimatedCube:
    """Count (e_t, e_{t+1}, e_{t+2}) triples and normalize with additive smoothing.

    Pairs never followed by a third event get the uniform column and
    ``pair_support`` False.
    """
    smoothing = Fraction(smoothing)
    if smoothing < 0:
        raise ValueError("smoothing must be nonnegative")
    if len(stream) < 3:
        raise EmptyStream(f"need at least 3 events, got {len(stream)}")
    n = stream.alphabet_size
    ev = np.asarray(stream.events, dtype=np.int64) - 1
    counts = np.zeros((n, n, n), dtype=np.int64)
    np.add.at(counts, (ev[:-2], ev[1:-1], ev[2:]), 1)
    totals = counts.sum(axis=2)
    support = totals > 0
    uniform = (Fraction(1, n),) * n
    coeffs = []
    for i in range(n):
        row = []
        for j in range(n):
            total = int(totals[i, j])
            if total == 0:
                row.append(uniform)
                continue
            denom = total + n * smoothing
            row.append(tuple((int(c) + smoothing) / denom for c in counts[i, j]))
        coeffs.append(tuple(row))
    return EstimatedCube(n, counts, ConvolutionCube(n, tuple(coeffs)), support, smoothing)


def _grid_column(vals: list[Fraction], bound: int) -> tuple[Fraction, ...]:
    """Largest-remainder rounding onto multiples of 1/bound (always normalized)."""
    scaled = [v * bound for v in vals]
    base = [max(0, math.floor(x)) for x in scaled]
    spare = bound - sum(base)
    order = sorted(range(len(vals)), key=lambda k: (-(scaled[k] - base[k]), k))
    for k in order[: max(spare, 0)]:
        base[k] += 1
    return tuple(Fraction(p, bound) for p in base)


def _near(v: Fraction, radius: Fraction, bound: int) -> list[Fraction]:
    out = set()
    for q in range(1, bound + 1):
        for p in range(max(0, math.ceil((v - radius) * q)), min(q, math.floor((v + radius) * q)) + 1):
            out.add(Fraction(p, q))
    return sorted(out)


def _min_worst(vals, cands) -> Fraction:
    """Smallest achievable max deviation over normalized choices."""
    states = {Fraction(0): Fraction(0)}
    for v, cs in zip(vals, cands):
        nxt = {}
        for s, worst in states.items():
            for c in cs:
                ns = s + c
                if ns <= 1:
                    w = max(worst, abs(c - v))
                    if ns not in nxt or w < nxt[ns]:
                        nxt[ns] = w
        states = nxt
    return states[Fraction(1)]


def snap_column(values: Sequence, bound: int) -> tuple[Fraction, ...]:
    """Closest (max norm) column summing to 1 with every denominator <= ``bound``.

    The grid rounding at 1/bound bounds the optimal error, so searching all
    small-denominator values within that radius is exhaustive.  Among optimal
    columns the smaller total deviation wins, then the lexicographically smaller.
    """
    vals = [Fraction(v) for v in values]
    grid = _grid_column(vals, bound)
    if sum(grid) != 1:
        raise ValueError(f"cannot snap column {values!r} at bound {bound}")
    radius = max(abs(c - v) for c, v in zip(grid, vals))
    cands = [_near(v, radius, bound) for v in vals]
    worst = _min_worst(vals, cands)
    cands = [[c for c in cs if abs(c - v) <= worst] for v, cs in zip(vals, cands)]

    states = {Fraction(0): (Fraction(0), ())}
    for v, cs in zip(vals, cands):
        nxt = {}
        for s, (total, choice) in states.items():
            for c in cs:
                ns = s + c
                if ns > 1:
                    continue
                key = (total + abs(c - v), choice + (c,))
                if ns not in nxt or key < nxt[ns]:
                    nxt[ns] = key
        states = nxt
    return states[Fraction(1)][1]


def snap_to_rational(source, denominator_bound: int) -> ConvolutionCube:
    """Snap every column of an estimated, exact, or float cube to small denominators."""
    if denominator_bound < 1:
        raise ValueError("denominator bound must be at least 1")
    if isinstance(source, EstimatedCube):
        source = source.cube
    if isinstance(source, ConvolutionCube):
        arr = source.coeffs
    else:
        arr = np.asarray(source, dtype=float).tolist()
    n = len(arr)
    coeffs = tuple(
        tuple(snap_column(arr[i][j], denominator_bound) for j in range(n)) for i in range(n)
    )
    return ConvolutionCube(n, coeffs)


def associativity_residual(cube) -> float:
    """Max-norm gap between A_i A_j and sum_k a_{i,j}(k) A_k, in floating point."""
    a = cube.to_float() if isinstance(cube, ConvolutionCube) else np.asarray(cube, float)
    lhs = np.einsum("ipk,jmp->ijkm", a, a)
    rhs = np.einsum("ijq,qmk->ijkm", a, a)
    return float(np.max(np.abs(lhs - rhs)))


def _count_clusters(rows: np.ndarray, tol: float) -> tuple[int, float]:
    """Greedy clustering in max norm; returns cluster count and min representative gap."""
    reps: list[np.ndarray] = []
    for r in rows:
        if not any(np.max(np.abs(r - c)) <= tol for c in reps):
            reps.append(r)
    gap = math.inf
    for x in range(len(reps)):
        for y in range(x + 1, len(reps)):
            gap = min(gap, float(np.max(np.abs(reps[x] - reps[y]))))
    return len(reps), gap


def condition_A_screen(cube, tol: float) -> dict:
    """Tolerance version of condition (A) on a float cube."""
    a = cube.to_float() if isinstance(cube, ConvolutionCube) else np.asarray(cube, float)
    n = a.shape[0]
    # A_i[k, j] = a[i, j, k];  B_i[k, j] = a[j, i, k]
    lefts = [a[i].T for i in range(n)]
    rights = [a[:, i, :].T for i in range(n)]
    lsv = [np.linalg.svd(m, compute_uv=False) for m in lefts]
    rsv = [np.linalg.svd(m, compute_uv=False) for m in rights]
    dl, lgap = _count_clusters(np.vstack(lefts), tol)
    dr, rgap = _count_clusters(np.vstack(rights), tol)
    left_ranks = [int(np.sum(s > tol)) for s in lsv]
    right_ranks = [int(np.sum(s > tol)) for s in rsv]
    holds = dl == n and dr == n and all(r == n for r in left_ranks + right_ranks)
    return {
        "distinct_left_rows": dl,
        "distinct_right_rows": dr,
        "left_ranks": left_ranks,
        "right_ranks": right_ranks,
        "min_singular_value": float(min(s.min() for s in lsv + rsv)),
        "min_row_separation": None if math.isinf(min(lgap, rgap)) else min(lgap, rgap),
        "holds": holds,
    }


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    n: int
    length: int
    smoothing: Fraction
    assoc_tol: float
    rank_tol: float
    denominator_bound: int
    unsupported_pairs: int
    associativity_residual: float
    associative_within_tol: bool
    condition_A: dict
    snapped_cube: ConvolutionCube
    snapped_violations: int
    recovery: RecoveryResult | None
    recovery_error: str | None

    @property
    def certified(self) -> bool:
        return self.recovery is not None and self.recovery.certified


def analyze_stream(
    stream: EventStream,
    smoothing=Fraction(0),
    assoc_tol: float = 0.05,
    denominator_bound: int = 6,
    rank_tol: float | None = None,
) -> AnalysisReport:
    """Estimate, screen with tolerances, snap, then run exact recovery.

    ``rank_tol`` defaults to ``assoc_tol``.  Every stage is reported; a failed
    recovery is recorded in ``recovery_error`` rather than raised.
    """
    rank_tol = assoc_tol if rank_tol is None else rank_tol
    est = estimate_cube(stream, smoothing)
    residual = associativity_residual(est.cube)
    screen = condition_A_screen(est.cube, rank_tol)
    snapped = snap_to_rational(est, denominator_bound)
    violations = len(check_associativity(snapped))
    recovery = None
    error = None
    try:
        recovery = recover_group(snapped)
    except SemihyperError as exc:
        error = f"{type(exc).__name__}: {exc}"
    return AnalysisReport(
        n=est.n,
        length=len(stream),
        smoothing=est.smoothing,
        assoc_tol=assoc_tol,
        rank_tol=rank_tol,
        denominator_bound=denominator_bound,
        unsupported_pairs=int((~est.pair_support).sum()),
        associativity_residual=residual,
        associative_within_tol=residual <= assoc_tol,
        condition_A=screen,
        snapped_cube=snapped,
        snapped_violations=violations,
        recovery=recovery,
        recovery_error=error,
    )
