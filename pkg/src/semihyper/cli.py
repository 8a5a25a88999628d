"""Command line front end.

Exit codes: 0 success, 1 domain failure (e.g. cube not derivable), 2 bad input.
``-`` as a path reads stdin, so commands compose in a pipe:

    semihyper derive --group g.json --measure m.json | semihyper check --cube - \
        | semihyper recover --cube -
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import formats
from .cube import check_associativity, check_condition_A, structure_report
from .derive import from_group
from .errors import NotDerivable, SemihyperError
from .groups import named
from .linalg import parse_rational
from .recover import recover_group
from .stream import analyze_stream, estimate_cube, simulate


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _read_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from exc


def _start_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("start must look like '1,2'")
    return a, b


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semihyper", description="Finite semihypergroups built from groups."
    )
    parser.add_argument("--output", "-o", default="-", help="output file (default stdout)")
    parser.add_argument("--quiet", "-q", action="store_true", help="no progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-group", help="emit a catalog group as Cayley JSON")
    p.add_argument("--name", required=True, help="e.g. Z4, Z2xZ2, S3, D4, Q8")

    p = sub.add_parser("derive", help="build the cube of a (group, measure) pair")
    p.add_argument("--group", required=True)
    p.add_argument("--measure", required=True)

    p = sub.add_parser("check", help="associativity, condition (A) and structure report")
    p.add_argument("--cube", required=True)

    p = sub.add_parser("recover", help="recover group and measure from a cube")
    p.add_argument("--cube", required=True)

    p = sub.add_parser("simulate", help="simulate a second-order event stream")
    p.add_argument("--cube", required=True)
    p.add_argument("--start", type=_start_pair, default=(1, 1))
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("estimate", help="estimate a cube from a stream file")
    p.add_argument("--stream", required=True)
    p.add_argument("--smoothing", type=_rational, default=Fraction(0))

    p = sub.add_parser("analyze", help="estimate, snap and recover from a stream file")
    p.add_argument("--stream", required=True)
    p.add_argument("--smoothing", type=_rational, default=Fraction(0))
    p.add_argument("--assoc-tol", type=float, default=0.05)
    p.add_argument("--rank-tol", type=float, default=None)
    p.add_argument("--denom-bound", type=int, default=6)
    return parser


def _execute(args) -> tuple[str, int]:
    cmd = args.command
    if cmd == "gen-group":
        return formats.dumps(formats.group_to_json(named(args.name))), 0

    if cmd == "derive":
        g = formats.group_from_json(_read_json(args.group))
        m = formats.measure_from_json(_read_json(args.measure))
        return formats.dumps(formats.derivation_to_json(from_group(g, m))), 0

    if cmd == "check":
        cube = formats.cube_from_json(_read_json(args.cube))
        out = formats.cube_to_json(cube)
        out["check"] = {
            "associativity_violations": [
                formats.violation_to_json(v) for v in check_associativity(cube)
            ],
            "condition_A": formats.condition_a_to_json(check_condition_A(cube)),
            "structure": formats.structure_to_json(structure_report(cube)),
        }
        return formats.dumps(out), 0

    if cmd == "recover":
        cube = formats.cube_from_json(_read_json(args.cube))
        try:
            result = recover_group(cube)
        except SemihyperError as exc:
            out = formats.recovery_to_json(None, f"{type(exc).__name__}: {exc}")
            return formats.dumps(out), 1
        return formats.dumps(formats.recovery_to_json(result)), 0

    if cmd == "simulate":
        cube = formats.cube_from_json(_read_json(args.cube))
        stream = simulate(cube, args.start, args.length, args.seed)
        return formats.stream_to_text(stream), 0

    if cmd == "estimate":
        stream = formats.stream_from_text(_read(args.stream))
        return formats.dumps(formats.estimated_to_json(estimate_cube(stream, args.smoothing))), 0

    if cmd == "analyze":
        stream = formats.stream_from_text(_read(args.stream))
        report = analyze_stream(
            stream, args.smoothing, args.assoc_tol, args.denom_bound, args.rank_tol
        )
        return formats.dumps(formats.analysis_to_json(report)), 0 if report.certified else 1

    raise InputError(f"unknown command {cmd}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = _execute(args)
    except (InputError, formats.FormatError) as exc:
        print(f"semihyper: error: {exc}", file=sys.stderr)
        return 2
    except NotDerivable as exc:
        print(f"semihyper: {exc}", file=sys.stderr)
        return 1
    except SemihyperError as exc:
        # invalid cube/group/measure contents are input errors
        print(f"semihyper: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        if not args.quiet:
            print(f"wrote {args.output}", file=sys.stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
