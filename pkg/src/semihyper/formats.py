"""Reading and writing the JSON and stream file formats.

Exact values are written as ``"p/q"`` strings; indices are 1-based.  Output
is canonical (sorted keys, fixed separators) so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cube import ConditionAReport, ConvolutionCube, Measure, StructureReport, Violation
from .derive import DerivationResult
from .errors import SemihyperError
from .groups import CayleyTable, validate_cayley
from .linalg import format_rational, parse_rational
from .recover import RecoveryResult
from .stream import AnalysisReport, EstimatedCube, EventStream


class FormatError(SemihyperError):
    """Malformed input file."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def _rat(x) -> str:
    return format_rational(x)


def _parse(x) -> Fraction:
    try:
        return parse_rational(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {x!r}") from exc


def cube_to_json(cube: ConvolutionCube) -> dict:
    return {
        "n": cube.n,
        "coeffs": [[[_rat(x) for x in col] for col in row] for row in cube.coeffs],
    }


def cube_from_json(data: dict) -> ConvolutionCube:
    try:
        n = data["n"]
        raw = data["coeffs"]
    except (KeyError, TypeError) as exc:
        raise FormatError("cube JSON needs 'n' and 'coeffs'") from exc
    if not isinstance(n, int):
        raise FormatError("'n' must be an integer")
    coeffs = [[[_parse(x) for x in col] for col in row] for row in raw]
    return ConvolutionCube(n, coeffs)


def measure_to_json(m: Measure) -> dict:
    return {"weights": [_rat(x) for x in m.weights]}


def measure_from_json(data) -> Measure:
    weights = data.get("weights") if isinstance(data, dict) else data
    if not isinstance(weights, list):
        raise FormatError("measure JSON needs a 'weights' list")
    return Measure(tuple(_parse(x) for x in weights))


def group_to_json(g: CayleyTable) -> dict:
    return {"n": g.order, "product": g.product}


def group_from_json(data: dict) -> CayleyTable:
    try:
        product = data["product"]
    except (KeyError, TypeError) as exc:
        raise FormatError("group JSON needs 'product'") from exc
    if "n" in data and data["n"] != len(product):
        raise FormatError(f"'n'={data['n']} but product has {len(product)} rows")
    return validate_cayley(product)


def matrix_to_json(rows) -> list:
    return [[_rat(x) for x in row] for row in rows]


def derivation_to_json(result: DerivationResult) -> dict:
    out = cube_to_json(result.cube)
    out["derivation"] = {
        "degenerate": result.degenerate,
        "base_matrix": matrix_to_json(result.base_matrix.entries),
    }
    return out


def violation_to_json(v: Violation) -> dict:
    return {"i": v.i, "j": v.j, "position": list(v.position), "lhs": _rat(v.lhs), "rhs": _rat(v.rhs)}


def condition_a_to_json(r: ConditionAReport) -> dict:
    return {
        "distinct_left_rows": r.distinct_left_rows,
        "distinct_right_rows": r.distinct_right_rows,
        "left_ranks": list(r.left_ranks),
        "right_ranks": list(r.right_ranks),
        "holds": r.holds,
    }


def structure_to_json(r: StructureReport) -> dict:
    return {
        "distinct_values": [[_rat(v), c] for v, c in r.distinct_values],
        "values_sum_to_one": r.values_sum_to_one,
        "row_multisets_uniform": r.row_multisets_uniform,
        "column_multisets_uniform": r.column_multisets_uniform,
        "diagonals_constant": r.diagonals_constant,
        "theorem1_profile": r.theorem1_profile,
    }


def recovery_to_json(result: RecoveryResult | None, diagnostics: str = "") -> dict:
    if result is None:
        return {
            "derived": False,
            "certified": False,
            "method": None,
            "group": None,
            "measure": None,
            "identity": None,
            "diagnostics": diagnostics,
        }
    return {
        "derived": result.certified,
        "certified": result.certified,
        "method": result.method,
        "group": group_to_json(result.group),
        "measure": [_rat(x) for x in result.measure.weights],
        "identity": result.identity_index,
        "diagnostics": result.diagnostics,
    }


def estimated_to_json(est: EstimatedCube) -> dict:
    out = cube_to_json(est.cube)
    out["counts"] = est.counts.tolist()
    out["pair_support"] = est.pair_support.tolist()
    out["smoothing"] = _rat(est.smoothing)
    return out


def analysis_to_json(report: AnalysisReport) -> dict:
    recovery = recovery_to_json(report.recovery, report.recovery_error or "")
    return {
        "n": report.n,
        "length": report.length,
        "tolerances": {
            "smoothing": _rat(report.smoothing),
            "assoc_tol": report.assoc_tol,
            "rank_tol": report.rank_tol,
            "denominator_bound": report.denominator_bound,
        },
        "unsupported_pairs": report.unsupported_pairs,
        "associativity_residual": report.associativity_residual,
        "associative_within_tol": report.associative_within_tol,
        "condition_A_screen": report.condition_A,
        "snapped_cube": cube_to_json(report.snapped_cube),
        "snapped_violations": report.snapped_violations,
        "recovery": recovery,
        "method_note": "estimated associativity is a max-norm residual; exactness "
        "is restored by snapping to small denominators before recovery",
    }


def stream_to_text(stream: EventStream, per_line: int = 25) -> str:
    lines = [f"n={stream.alphabet_size}"]
    ev = stream.events
    for start in range(0, len(ev), per_line):
        lines.append(" ".join(str(x) for x in ev[start:start + per_line]))
    return "\n".join(lines) + "\n"


def stream_from_text(text: str) -> EventStream:
    head, _, body = text.lstrip().partition("\n")
    head = head.strip()
    if not head.startswith("n="):
        raise FormatError("stream file must start with 'n=<int>'")
    try:
        n = int(head[2:])
        events = tuple(int(tok) for tok in body.split())
    except ValueError as exc:
        raise FormatError(f"bad stream file: {exc}") from exc
    try:
        return EventStream(n, events)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
