"""Command-line front end.

Usage examples::

    sugeno-bounds integrate --f "x^5/4" --interval 0,1
    sugeno-bounds integrate --f "x^2" --interval 1,4 --measure "sqrt(x)" --format json
    sugeno-bounds bound --f "x^(3/2)" --g "x^(1/2)" --interval 1,4 --s 1 --m 1
    sugeno-bounds verify --f "1/x^2" --g "1/x^2" --interval 1,2 --s 1 --m 1 --fail-on-violation
    sugeno-bounds convexity --f "x^2/2" --interval 0,1 --s 0.3333333333333333 --m 1
    sugeno-bounds reproduce --case all --format csv

Output formats: text (default, 6 significant digits), json (one object per
run, full precision), csv (constant column count).  Identical invocations
produce byte-identical stdout.

Exit codes: 0 success; 1 a verified inequality failed under
--fail-on-violation; 2 usage or expression parse errors; 3 unsupported
endpoint case or precondition failure.  The environment variable
``SUGENO_GRID_N`` overrides the default integration grid size.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .bounds import (
    BetaResult,
    VerificationReport,
    decreasing_case_beta,
    hadamard_bound,
    increasing_case_beta,
    kirmaci_bound,
    verify_hadamard,
)
from .convexity import ConvexityVerdict, EndpointData, SMParams, check_sm_convex, envelope
from .exceptions import (
    CaseError,
    DomainError,
    EvalError,
    InvalidDistortionError,
    NegativeFunctionError,
    ParseError,
    PreconditionError,
    UnsupportedCaseError,
)
from .expr import parse, product
from .measure import Interval, MeasureSpec, distortion, lebesgue
from .rootfind import SolverConfig
from .sugeno import (
    DEFAULT_GRID,
    DistributionProfile,
    IntegralResult,
    sugeno_integral,
    sugeno_integral_oracle,
)

__all__ = ["ReproduceRow", "reproduce", "emit_report", "build_parser", "run", "main"]

REPRODUCE_TOL = 5e-4
VERDICT_MATCH = "Match"
VERDICT_MISMATCH = "Mismatch"
VERDICT_INCONSISTENT = "PaperInternalInconsistency"

_FORMATS = ("text", "json", "csv")


class _UsageError(Exception):
    pass


@dataclass(frozen=True)
class ReproduceRow:
    case_id: str
    quantity: str
    paper_value: float
    computed_value: float
    abs_diff: float
    verdict: str
    note: str = ""


def _row(case_id, quantity, golden, computed, verdict=None, note=""):
    diff = abs(computed - golden)
    if verdict is None:
        verdict = VERDICT_MATCH if diff <= REPRODUCE_TOL else VERDICT_MISMATCH
    return ReproduceRow(case_id, quantity, golden, computed, diff, verdict, note)


def _case_32() -> list[ReproduceRow]:
    base = Interval(0.0, 1.0)
    integral = sugeno_integral(parse("x^5/4"), base)
    endpoints = EndpointData(fa=0.0, fb=0.5, ga=0.0, gb=0.5)
    kir = kirmaci_bound(endpoints, 1.0 / 3.0)
    return [
        _row("3.2", "sugeno integral of x^5/4 on [0,1]", 0.1269, integral.value),
        _row("3.2", "endpoint comparison value at s=1/3", 0.1071, kir),
    ]


def _case_38() -> list[ReproduceRow]:
    base = Interval(1.0, 4.0)
    p = SMParams(1.0, 1.0)
    integral = sugeno_integral(parse("x^2"), base)
    e = EndpointData(fa=1.0, fb=8.0, ga=1.0, gb=2.0)
    beta = increasing_case_beta(e, base, p)

    # Residual of the published threshold in the bound equation, as printed
    # (no clamping), plus the sup-min of the true envelope-product
    # distribution for context.  The published value solves neither.
    published = 2.5302
    w = base.b - p.m * base.a
    inv_s = 1.0 / p.s
    q_f = (published - p.m * 2.0 ** (1.0 - p.s) * e.fa) / (e.fb - p.m * e.fa)
    q_g = (published - p.m * 2.0 ** (1.0 - p.s) * e.ga) / (e.gb - p.m * e.ga)
    lhs = (w * (1.0 - q_f**inv_s)) * (w * (1.0 - q_g**inv_s))
    equation_residual = abs(lhs - published)

    env_f = envelope(e.fa, e.fb, base, p).as_expr()
    env_g = envelope(e.ga, e.gb, base, p).as_expr()
    brute_force = sugeno_integral_oracle(product(env_f, env_g), base)
    note = (
        f"published threshold does not solve the bound equation "
        f"(equation residual {equation_residual:.6g}); computed root {beta.beta:.6g}; "
        f"sup-min of the true envelope-product distribution {brute_force:.6g}"
    )
    return [
        _row("3.8", "sugeno integral of x^2 on [1,4]", 2.4384, integral.value),
        _row("3.8", "increasing-case bound threshold", published, beta.beta,
             verdict=VERDICT_INCONSISTENT, note=note),
    ]


def _case_39() -> list[ReproduceRow]:
    base = Interval(1.0, 2.0)
    integral = sugeno_integral(parse("1/x^4"), base)
    e = EndpointData(fa=1.0, fb=0.25, ga=1.0, gb=0.25)
    beta = decreasing_case_beta(e, base, SMParams(1.0, 1.0))
    return [
        _row("3.9", "sugeno integral of 1/x^4 on [1,2]", 0.3247, integral.value),
        _row("3.9", "decreasing-case bound threshold", 0.4802, beta.beta),
    ]


_CASES = {"3.2": _case_32, "3.8": _case_38, "3.9": _case_39}


def reproduce(case: str = "all") -> list[ReproduceRow]:
    """Recompute the bundled worked cases and compare against golden values."""
    if case == "all":
        rows = []
        for key in ("3.2", "3.8", "3.9"):
            rows.extend(_CASES[key]())
        return rows
    if case not in _CASES:
        raise _UsageError(f"unknown case {case!r}; pick one of 3.2, 3.8, 3.9, all")
    return _CASES[case]()


# ---------------------------------------------------------------------------
# report serialization


def _fmt6(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6g")
    if value is None:
        return "-"
    return str(value)


def _text_pairs(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k:<{width}}  {_fmt6(v)}" for k, v in pairs)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def _report_fields(report) -> list[tuple[str, object]]:
    if isinstance(report, IntegralResult):
        return [
            ("value", report.value),
            ("method", report.method),
            ("residual", report.residual),
            ("alpha_lo", report.alpha_bracket[0]),
            ("alpha_hi", report.alpha_bracket[1]),
            ("grid_points", report.grid_points),
        ]
    if isinstance(report, BetaResult):
        return [
            ("beta", report.beta),
            ("residual", report.residual),
            ("bound", report.bound),
            ("case", report.case.value),
            ("literal_mode", report.literal_mode),
        ]
    if isinstance(report, VerificationReport):
        return list(report.to_json_dict().items())
    if isinstance(report, ConvexityVerdict):
        witness = report.witness or (None, None, None, None)
        return [
            ("holds_on_grid", report.holds_on_grid),
            ("witness_x", witness[0]),
            ("witness_y", witness[1]),
            ("witness_lambda", witness[2]),
            ("witness_gap", witness[3]),
            ("grid", report.grid),
            ("skipped", report.skipped),
        ]
    raise TypeError(f"cannot emit a report for {type(report).__name__}")


_REPRODUCE_HEADER = (
    "case_id",
    "quantity",
    "paper_value",
    "computed_value",
    "abs_diff",
    "verdict",
    "note",
)


def emit_report(report, fmt: str = "text") -> str:
    """Render any report object in the requested format, deterministically."""
    if fmt not in _FORMATS:
        raise _UsageError(f"unknown format {fmt!r}")

    if isinstance(report, DistributionProfile):
        if fmt == "csv":
            return _csv_text(["alpha", "F"], [[a, v] for a, v in report.samples])
        if fmt == "json":
            return json.dumps({"alpha": list(report.alphas()), "F": list(report.values())})
        lines = [f"{'alpha':>14}  {'F':>14}"]
        lines += [f"{_fmt6(a):>14}  {_fmt6(v):>14}" for a, v in report.samples]
        return "\n".join(lines)

    if isinstance(report, list) and all(isinstance(r, ReproduceRow) for r in report):
        dicts = [
            {
                "case_id": r.case_id,
                "quantity": r.quantity,
                "paper_value": r.paper_value,
                "computed_value": r.computed_value,
                "abs_diff": r.abs_diff,
                "verdict": r.verdict,
                "note": r.note,
            }
            for r in report
        ]
        if fmt == "json":
            return json.dumps({"rows": dicts})
        if fmt == "csv":
            return _csv_text(_REPRODUCE_HEADER, [[d[k] for k in _REPRODUCE_HEADER] for d in dicts])
        header = ("case", "quantity", "expected", "computed", "diff", "verdict")
        cells = [header] + [
            (r.case_id, r.quantity, _fmt6(r.paper_value), _fmt6(r.computed_value),
             _fmt6(r.abs_diff), r.verdict)
            for r in report
        ]
        widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
        lines = ["  ".join(f"{row[i]:<{widths[i]}}" for i in range(len(header))).rstrip()
                 for row in cells]
        notes = [f"note [{r.case_id}]: {r.note}" for r in report if r.note]
        return "\n".join(lines + notes)

    fields = _report_fields(report)
    if fmt == "json":
        return json.dumps(dict(fields))
    if fmt == "csv":
        return _csv_text([k for k, _ in fields], [[_csv_cell(v) for _, v in fields]])
    return _text_pairs(fields)


# ---------------------------------------------------------------------------
# argument handling


def _parse_interval(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise _UsageError(f"--interval expects 'a,b', got {text!r}")
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise _UsageError(f"--interval expects two numbers, got {text!r}") from None
    if not a < b:
        raise _UsageError(f"--interval expects a < b, got {text!r}")
    return Interval(a, b)


def _parse_measure(text: str, base: Interval) -> MeasureSpec:
    if text.strip().lower() == "lebesgue":
        return lebesgue()
    return distortion(parse(text), base)


def _grid_default(cli_value: int | None) -> int:
    if cli_value is not None:
        return cli_value
    raw = os.environ.get("SUGENO_GRID_N")
    if raw is None:
        return DEFAULT_GRID
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"SUGENO_GRID_N must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sugeno-bounds",
        description="Sugeno integrals and Hadamard-type endpoint bounds on intervals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=_FORMATS, default="text")

    p = sub.add_parser("integrate", help="Sugeno integral of f over [a,b]")
    p.add_argument("--f", required=True, dest="f_text", metavar="EXPR")
    p.add_argument("--interval", required=True, metavar="A,B")
    p.add_argument("--measure", default="lebesgue",
                   help="'lebesgue' or a distortion map as an expression in x")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-12)
    add_format(p)

    p = sub.add_parser("bound", help="endpoint-case bound threshold for a product f*g")
    p.add_argument("--f", required=True, dest="f_text", metavar="EXPR")
    p.add_argument("--g", required=True, dest="g_text", metavar="EXPR")
    p.add_argument("--interval", required=True, metavar="A,B")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--literal", action=argparse.BooleanOptionalAction, default=True,
                   help="keep factor lengths as the closed form gives them "
                        "(--no-literal clamps each factor to [0, b-a])")
    add_format(p)

    p = sub.add_parser("verify", help="integral of f*g against the endpoint bounds")
    p.add_argument("--f", required=True, dest="f_text", metavar="EXPR")
    p.add_argument("--g", required=True, dest="g_text", metavar="EXPR")
    p.add_argument("--interval", required=True, metavar="A,B")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--literal", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--fail-on-violation", action="store_true")
    add_format(p)

    p = sub.add_parser("convexity", help="grid check of (s,m)-convexity in the second sense")
    p.add_argument("--f", required=True, dest="f_text", metavar="EXPR")
    p.add_argument("--interval", required=True, metavar="A,B")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--grid", type=int, default=41)
    add_format(p)

    p = sub.add_parser("reproduce", help="recompute the bundled worked cases")
    p.add_argument("--case", choices=["3.2", "3.8", "3.9", "all"], default="all")
    add_format(p)

    return parser


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "integrate":
        base = _parse_interval(args.interval)
        f = parse(args.f_text)
        spec = _parse_measure(args.measure, base)
        result = sugeno_integral(f, base, spec, SolverConfig(tol=args.tol), _grid_default(args.grid))
        print(emit_report(result, args.format))
        return 0

    if args.command == "bound":
        base = _parse_interval(args.interval)
        f, g = parse(args.f_text), parse(args.g_text)
        result = hadamard_bound(f, g, base, SMParams(args.s, args.m),
                                SolverConfig(tol=args.tol), args.literal)
        print(emit_report(result, args.format))
        return 0

    if args.command == "verify":
        base = _parse_interval(args.interval)
        f, g = parse(args.f_text), parse(args.g_text)
        report = verify_hadamard(f, g, base, SMParams(args.s, args.m),
                                 SolverConfig(tol=args.tol), _grid_default(args.grid),
                                 args.literal)
        print(emit_report(report, args.format))
        if args.fail_on_violation and not report.holds:
            return 1
        return 0

    if args.command == "convexity":
        base = _parse_interval(args.interval)
        verdict = check_sm_convex(parse(args.f_text), base, SMParams(args.s, args.m), args.grid)
        print(emit_report(verdict, args.format))
        return 0

    # reproduce
    print(emit_report(reproduce(args.case), args.format))
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code is None else int(exc.code)
    try:
        return _dispatch(args)
    except (ParseError, _UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedCaseError, CaseError, DomainError, NegativeFunctionError,
            PreconditionError, EvalError, InvalidDistortionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))
