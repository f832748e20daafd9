"""Command line front end: exact documents in, exact documents out.

Five subcommands:

* ``intersect``   pairings of (possibly Weil) divisors through a model file
* ``hilbert``     Euler characteristic table for a numerics file
* ``enumerate``   the finite family of Hilbert functions for (k1, k2, s)
* ``bounds``      the admissible window for the ambient canonical square
* ``example``     the two built-in double-cover families, with sweeps

Exit status 0 on success; 1 for I/O and document-shape problems; 2 for
mathematically invalid input. Errors go to stderr as a JSON object
``{"error": {"code", "message", "context"}}``. Output is byte-identical
across repeated runs with the same inputs regardless of worker count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import serialization as ser
from .bounds import (
    EnumerationQuery,
    ample_divisor_numerics,
    enumerate_hilbert,
    kx2_bounds,
)
from .constructions import (
    AbelianCoverInput,
    ConstructionReport,
    RuledCoverInput,
    abelian_double_cover,
    ruled_double_cover,
)
from .errors import DocumentError, FolcanError, InvalidInput
from .exact_core import format_rational, parse_rational
from .riemann_roch import hilbert_value, integrality_check, to_hilbert_function
from .surface_model import ResolutionData, mumford_pullback, weil_intersect


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str] = None
    output_format: str = "json"
    worker_count: int = 1
    seed: Optional[int] = None


def _rational_flag(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_set_flag(text: str) -> frozenset[int]:
    try:
        return frozenset(int(part) for part in text.split(",") if part != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def _sweep_flag(text: str) -> tuple[str, int, int]:
    name, sep, span = text.partition("=")
    start, dots, stop = span.partition("..")
    if not sep or not dots or not name:
        raise argparse.ArgumentTypeError(f"sweep must look like param=a..b, got {text!r}")
    try:
        lo, hi = int(start), int(stop)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"sweep endpoints must be integers: {text!r}") from exc
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty sweep range: {text!r}")
    return (name, lo, hi)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="folcan",
        description="Exact numerical invariants of foliated surfaces.",
    )
    parser.add_argument("--format", choices=("json", "csv"), default="json", dest="output_format")
    parser.add_argument("--out", metavar="PATH", default=None)
    parser.add_argument("--seed", type=int, default=None, help="reserved for scripted harnesses")
    # the output flags are accepted both before and after the subcommand;
    # SUPPRESS keeps the subcommand copy from clobbering a global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv"), dest="output_format", default=argparse.SUPPRESS
    )
    common.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_command(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    intersect = add_command("intersect", help="pair divisor classes through a model file")
    intersect.add_argument("--model", required=True, metavar="FILE")
    intersect.add_argument("--left", required=True, help="class name or comma-separated rationals")
    intersect.add_argument("--right", required=True)

    hilbert = add_command("hilbert", help="Euler characteristic table from a numerics file")
    hilbert.add_argument("--numerics", required=True, metavar="FILE")
    hilbert.add_argument("--mmax", type=int, required=True)

    enum = add_command("enumerate", help="all Hilbert functions for fixed (k1, k2, s)")
    enum.add_argument("--k1", type=_rational_flag, required=True)
    enum.add_argument("--k2", type=_rational_flag, required=True)
    enum.add_argument("--s", type=int, required=True)
    enum.add_argument("--chi", type=_int_set_flag, required=True, metavar="C1,C2,...")
    enum.add_argument("--cap", type=int, required=True)
    enum.add_argument("--max-cusps", type=int, default=0)
    enum.add_argument("--no-cusps", action="store_true")
    enum.add_argument("--q-index-divides", action="store_true")
    enum.add_argument("--workers", type=int, default=1)

    bounds = add_command("bounds", help="window for the ambient canonical square")
    bounds.add_argument("--k1", type=_rational_flag, required=True)
    bounds.add_argument("--k2", type=_rational_flag, required=True)
    bounds.add_argument("--s", type=int, required=True)
    bounds.add_argument("--kx2", type=_rational_flag, default=None)

    example = add_command("example", help="built-in double-cover families")
    family = example.add_subparsers(dest="family", required=True)
    ruled = family.add_parser("ruled", parents=[common])
    ruled.add_argument("--k", type=int, required=True)
    ruled.add_argument("--g", type=int, required=True)
    ruled.add_argument("--q", type=int, required=True)
    ruled.add_argument("--sweep", type=_sweep_flag, default=None, metavar="PARAM=A..B")
    abelian = family.add_parser("abelian", parents=[common])
    abelian.add_argument("--d", type=int, required=True)
    abelian.add_argument("--n", type=int, required=True)
    abelian.add_argument("--sweep", type=_sweep_flag, default=None, metavar="PARAM=A..B")
    return parser


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _csv_text(rows: Sequence[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _vector_cell(v) -> str:
    return " ".join(format_rational(x) for x in v)


# ---------------------------------------------------------------- commands

def _parse_class(model, resolution, text: str):
    if text in resolution.strict_transforms:
        return resolution.strict_transforms[text]
    try:
        return model.resolve_class(text)
    except FolcanError:
        pass
    try:
        return tuple(parse_rational(part) for part in text.split(","))
    except ValueError:
        raise InvalidInput(
            f"{text!r} is neither a known class name nor a rational vector",
            known=sorted(
                set(resolution.strict_transforms) | set(model.distinguished_classes)
            ),
        ) from None


def _cmd_intersect(args) -> str:
    model, resolution = ser.model_from_json(_load_json(args.model))
    if resolution is None:
        resolution = ResolutionData(ambient=model, exceptional_indices=())
    left = _parse_class(model, resolution, args.left)
    right = _parse_class(model, resolution, args.right)
    value = weil_intersect(resolution, left, right)
    payload = {
        "left": ser.vector_to_json(model._coerce(left)),
        "right": ser.vector_to_json(model._coerce(right)),
        "pullback_left": ser.vector_to_json(mumford_pullback(resolution, left)),
        "pullback_right": ser.vector_to_json(mumford_pullback(resolution, right)),
        "value": format_rational(value),
    }
    if args.output_format == "csv":
        rows = [["quantity", "value"]] + [
            [key, value if isinstance(value, str) else _vector_cell(value)]
            for key, value in (
                ("left", left),
                ("right", right),
                ("pullback_left", mumford_pullback(resolution, left)),
                ("pullback_right", mumford_pullback(resolution, right)),
                ("value", payload["value"]),
            )
        ]
        return _csv_text(rows)
    return ser.dumps(payload)


def _cmd_hilbert(args) -> str:
    numerics = ser.numerics_from_json(_load_json(args.numerics))
    if args.mmax < 0:
        raise InvalidInput(f"--mmax must be nonnegative, got {args.mmax}")
    values = [(m, hilbert_value(numerics, m)) for m in range(args.mmax + 1)]
    if args.output_format == "csv":
        return _csv_text([["m", "P"]] + [[m, format_rational(v)] for m, v in values])
    integral = integrality_check(numerics)
    payload = {
        "integral": integral,
        "numerics": ser.numerics_to_json(numerics),
        "values": [[m, format_rational(v)] for m, v in values],
    }
    if integral:
        payload["hilbert_function"] = ser.hilbert_function_to_json(to_hilbert_function(numerics))
    return ser.dumps(payload)


def _cmd_enumerate(args) -> str:
    query = EnumerationQuery(
        k1=args.k1,
        k2=args.k2,
        s=args.s,
        chi_set=args.chi,
        basket_cap=args.cap,
        include_cusps=not args.no_cusps,
        max_cusps=args.max_cusps,
        q_index_divides=args.q_index_divides,
    )
    found = enumerate_hilbert(query, worker_count=args.workers)
    if args.output_format == "csv":
        rows = [["k1", "k2", "chi", "period", "correction", "extrapolated", "witness_count"]]
        for entry in found:
            h = entry.function
            rows.append(
                [
                    format_rational(h.k1),
                    format_rational(h.k2),
                    h.chi,
                    h.period,
                    " ".join(format_rational(c) for c in h.correction),
                    str(h.extrapolated).lower(),
                    len(entry.witnesses),
                ]
            )
        return _csv_text(rows)
    payload = {
        "count": len(found),
        "functions": [ser.enumerated_function_to_json(entry) for entry in found],
        "query": {
            "k1": format_rational(query.k1),
            "k2": format_rational(query.k2),
            "s": query.s,
            "chi_set": sorted(query.chi_set),
            "basket_cap": query.basket_cap,
            "max_cusps": query.effective_max_cusps,
            "q_index_divides": query.q_index_divides,
        },
    }
    return ser.dumps(payload)


def _cmd_bounds(args) -> str:
    report = kx2_bounds(args.k1, args.k2, args.s)
    payload = {
        "kx2_upper": format_rational(report.kx2_upper),
        "kx2_lower_exclusive": format_rational(report.kx2_lower_exclusive),
        "interval_empty": report.interval_empty,
    }
    if report.kx2_lower_exclusive_variant is not None:
        payload["kx2_lower_exclusive_variant"] = format_rational(report.kx2_lower_exclusive_variant)
    if args.kx2 is not None:
        d_squared, d_dot_kx = ample_divisor_numerics(args.k1, args.k2, args.kx2, args.s)
        payload["D_squared"] = format_rational(d_squared)
        payload["D_dot_KX"] = format_rational(d_dot_kx)
        payload["kx2_in_window"] = bool(
            report.kx2_lower_exclusive < args.kx2 <= report.kx2_upper
        )
    if args.output_format == "csv":
        rows = [["quantity", "value"]] + [
            [key, str(value) if not isinstance(value, bool) else str(value).lower()]
            for key, value in sorted(payload.items())
        ]
        return _csv_text(rows)
    return ser.dumps(payload)


def _flat_report(report: ConstructionReport) -> dict:
    flat: dict[str, object] = {
        "kf2": format_rational(report.kf2),
        "kf_dot_kx": format_rational(report.kf_dot_kx),
        "fiber_genus": report.fiber_genus,
    }
    for name in sorted(report.auxiliary):
        value = report.auxiliary[name]
        flat[f"aux_{name}"] = (
            _vector_cell(value) if isinstance(value, tuple) else format_rational(value)
        )
    flat["assumptions"] = "; ".join(report.assumptions)
    return flat


def _build_example(args) -> ConstructionReport:
    if args.family == "ruled":
        return ruled_double_cover(RuledCoverInput(k=args.k, g=args.g, q=args.q))
    return abelian_double_cover(AbelianCoverInput(d=args.d, n=args.n))


def _cmd_example(args) -> str:
    if args.sweep is None:
        flat = _flat_report(_build_example(args))
        if args.output_format == "csv":
            return _csv_text([["quantity", "value"]] + [[k, v] for k, v in flat.items()])
        return ser.dumps(flat)

    name, lo, hi = args.sweep
    allowed = ("k", "g", "q") if args.family == "ruled" else ("d", "n")
    if name not in allowed:
        raise InvalidInput(f"sweep parameter {name!r} not in {allowed}")
    reports = []
    for value in range(lo, hi + 1):
        swept = argparse.Namespace(**vars(args))
        setattr(swept, name, value)
        reports.append((value, _build_example(swept)))
    if args.output_format == "json":
        return ser.dumps(
            [{name: value, **_flat_report(report)} for value, report in reports]
        )
    rows = [[name, "kf2", "kf_dot_kx", "fiber_genus"]]
    for value, report in reports:
        rows.append(
            [value, format_rational(report.kf2), format_rational(report.kf_dot_kx), report.fiber_genus]
        )
    return _csv_text(rows)


_HANDLERS = {
    "intersect": _cmd_intersect,
    "hilbert": _cmd_hilbert,
    "enumerate": _cmd_enumerate,
    "bounds": _cmd_bounds,
    "example": _cmd_example,
}


def _error_payload(code: str, message: str, context: dict) -> str:
    body = {"error": {"code": code, "message": message, "context": context}}
    return json.dumps(body, indent=2, sort_keys=True, default=str) + "\n"


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    config = RunConfig(
        command=args.command,
        input_path=getattr(args, "model", None) or getattr(args, "numerics", None),
        output_format=args.output_format,
        worker_count=getattr(args, "workers", 1),
        seed=args.seed,
    )
    try:
        text = _HANDLERS[config.command](args)
    except DocumentError as exc:
        stderr.write(_error_payload(exc.code, str(exc), exc.context))
        return 1
    except json.JSONDecodeError as exc:
        stderr.write(_error_payload("json_parse_error", str(exc), {}))
        return 1
    except OSError as exc:
        stderr.write(_error_payload("io_error", str(exc), {}))
        return 1
    except FolcanError as exc:
        stderr.write(_error_payload(exc.code, str(exc), exc.context))
        return 2
    if args.out is not None:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            stderr.write(_error_payload("io_error", str(exc), {}))
            return 1
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
