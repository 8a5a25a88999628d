import itertools
import statistics
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semihyper.cube import ConvolutionCube, Measure
from semihyper.derive import from_group
from semihyper.errors import BadLength, BadStart, EmptyStream
from semihyper.groups import is_isomorphic, named
from semihyper.recover import verify_recovery
from semihyper.stream import (
    EventStream,
    analyze_stream,
    associativity_residual,
    estimate_cube,
    simulate,
    snap_column,
    snap_to_rational,
)

from conftest import left_absorbing_cube

Z3_MEASURE = Measure((F(1, 2), F(1, 3), F(1, 6)))


@pytest.fixture(scope="module")
def z3_cube():
    return from_group(named("Z3"), Z3_MEASURE).cube


@pytest.fixture(scope="module")
def z3_stream(z3_cube):
    return simulate(z3_cube, (1, 1), 100_000, seed=0)


def test_simulate_degenerate_chains():
    cayley = from_group(named("Z2"), Measure((1, 0))).cube
    assert simulate(cayley, (1, 1), 10, seed=3).events == (1,) * 10
    # following the Z2 table: next = previous two multiplied
    assert simulate(cayley, (1, 2), 10, seed=3).events == (1, 2, 2, 1, 2, 2, 1, 2, 2, 1)


def test_simulate_errors(z2_cube):
    with pytest.raises(BadLength):
        simulate(z2_cube, (1, 1), 1, seed=0)
    with pytest.raises(BadStart):
        simulate(z2_cube, (1, 3), 10, seed=0)
    with pytest.raises(BadStart):
        simulate(z2_cube, (0, 1), 10, seed=0)


def test_simulate_reproducible(z2_cube):
    a = simulate(z2_cube, (1, 2), 500, seed=42)
    b = simulate(z2_cube, (1, 2), 500, seed=42)
    c = simulate(z2_cube, (1, 2), 500, seed=43)
    assert a == b and a != c
    assert a.events[:2] == (1, 2) and len(a) == 500


def test_simulate_law_of_large_numbers(z2_cube):
    ev = np.array(simulate(z2_cube, (1, 1), 100_000, seed=1).events)
    after = ev[2:][(ev[:-2] == 1) & (ev[1:-1] == 1)]
    assert abs(np.mean(after == 1) - 2 / 3) < 0.015


def test_estimate_example():
    est = estimate_cube(EventStream(2, (1, 2, 2, 1)))
    assert est.counts[0, 1, 1] == 1 and est.counts[1, 1, 0] == 1 and est.counts.sum() == 2
    assert est.cube.coeffs[0][1] == (0, 1)
    assert est.cube.coeffs[1][1] == (1, 0)
    assert est.pair_support.tolist() == [[False, True], [False, True]]
    assert est.cube.coeffs[0][0] == (F(1, 2), F(1, 2))


def test_estimate_smoothing_normalizes():
    est = estimate_cube(EventStream(3, (1, 2, 3, 1, 1, 2, 2)), smoothing=F(1, 2))
    for row in est.cube.coeffs:
        for col in row:
            assert sum(col) == 1
    # (1,2) was followed by 3 and 2: counts (0,1,1) + 1/2 over 2 + 3/2
    assert est.cube.coeffs[0][1] == (F(1, 7), F(3, 7), F(3, 7))


def test_estimate_needs_three_events():
    with pytest.raises(EmptyStream):
        estimate_cube(EventStream(2, (1, 2)))


def test_estimate_accuracy(z3_cube, z3_stream):
    est = estimate_cube(z3_stream)
    assert est.pair_support.all()
    assert np.max(np.abs(est.cube.to_float() - z3_cube.to_float())) <= 0.02


def test_snap_examples():
    assert snap_column([0.334, 0.333, 0.333], 3) == (F(1, 3),) * 3
    assert snap_column([0.501, 0.332, 0.167], 6) == (F(1, 2), F(1, 3), F(1, 6))


def test_snap_fixed_point(z3_cube):
    assert snap_to_rational(z3_cube, 6) == z3_cube
    assert snap_to_rational(z3_cube, 12) == z3_cube


def brute_snap(values, bound):
    grid = sorted({F(p, q) for q in range(1, bound + 1) for p in range(q + 1)})
    vals = [F(v) for v in values]
    best = None
    for head in itertools.product(grid, repeat=len(vals) - 1):
        last = 1 - sum(head)
        if last < 0 or last.denominator > bound:
            continue
        col = head + (last,)
        devs = [abs(c - v) for c, v in zip(col, vals)]
        key = (max(devs), sum(devs), col)
        if best is None or key < best:
            best = key
    return best[2]


@given(
    st.lists(st.integers(0, 1000), min_size=2, max_size=3).filter(lambda w: sum(w) > 0),
    st.integers(1, 6),
)
@settings(max_examples=80, deadline=None)
def test_snap_is_optimal(weights, bound):
    s = sum(weights)
    col = [F(w, s) for w in weights]
    assert snap_column(col, bound) == brute_snap(col, bound)


def test_snap_idempotent(z3_stream):
    once = snap_to_rational(estimate_cube(z3_stream), 6)
    assert snap_to_rational(once, 6) == once
    rough = snap_to_rational(estimate_cube(EventStream(3, z3_stream.events[:300])), 4)
    assert snap_to_rational(rough, 4) == rough


def test_snap_accepts_float_arrays(z3_cube):
    noisy = z3_cube.to_float() + 0.004 * np.sin(np.arange(27)).reshape(3, 3, 3)
    noisy /= noisy.sum(axis=2, keepdims=True)
    assert snap_to_rational(noisy, 6) == z3_cube


def test_residual_zero_on_exact_cube(z3_cube):
    assert associativity_residual(z3_cube) < 1e-12


def test_analyze_z3(z3_stream):
    rep = analyze_stream(z3_stream, assoc_tol=0.05, denominator_bound=6)
    assert rep.associative_within_tol and rep.condition_A["holds"]
    assert rep.certified and rep.snapped_violations == 0
    assert is_isomorphic(rep.recovery.group, named("Z3"))
    assert rep.recovery.measure == Z3_MEASURE
    assert verify_recovery(rep.snapped_cube, rep.recovery.group, rep.recovery.measure)


def test_analyze_iid_uniform():
    rng = np.random.Generator(np.random.PCG64(5))
    stream = EventStream(3, tuple(int(x) + 1 for x in rng.integers(0, 3, 100_000)))
    rep = analyze_stream(stream, denominator_bound=6)
    assert all(col == (F(1, 3),) * 3 for row in rep.snapped_cube.coeffs for col in row)
    assert not rep.certified
    assert rep.recovery_error.startswith("SingularA1")
    assert not rep.condition_A["holds"]


def test_analyze_left_absorbing():
    cube = left_absorbing_cube(3)
    stream = simulate(cube, (2, 3), 1000, seed=0)
    rep = analyze_stream(stream)
    assert not rep.certified and rep.recovery_error
    assert rep.unsupported_pairs > 0


def test_estimator_consistency(z3_cube):
    truth = z3_cube.to_float()
    medians = []
    for length in (1_000, 10_000, 100_000):
        errs = []
        for seed in range(10):
            est = estimate_cube(simulate(z3_cube, (1, 1), length, seed=seed))
            errs.append(np.max(np.abs(est.cube.to_float() - truth)))
        medians.append(statistics.median(errs))
    assert medians[0] >= medians[1] >= medians[2]


def test_analysis_is_deterministic(z3_cube):
    a = analyze_stream(simulate(z3_cube, (2, 3), 5000, seed=9))
    b = analyze_stream(simulate(z3_cube, (2, 3), 5000, seed=9))
    assert a.associativity_residual == b.associativity_residual
    assert a.snapped_cube == b.snapped_cube
    assert a.condition_A == b.condition_A
    assert a.recovery_error == b.recovery_error
