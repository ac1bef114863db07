"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 invalid request, 3 closed-form vs
generic mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass

from . import aggregate
from .measures import MEASURES, MeasureError
from .numeric import NumericError
from .regroup import CUT_MODES
from .states import StateError, load_state

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REQUEST = 2
EXIT_MISMATCH = 3

FAMILY_TOL = 1e-9


class InvalidRequest(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    state_path: str | None = None
    measure_kind: str | None = None
    tol: float = aggregate.DEFAULT_TOL
    cut_mode: str = "literal"
    output_format: str = "text"
    output_path: str | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidRequest(f"--tol must be positive, got {self.tol}")


def fmt(x: float) -> str:
    return f"{x:.12f}"


def fmt_csv(x: float) -> str:
    return format(x, ".12g")


def _emit(text: str, config: RunConfig):
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _load(config):
    if not config.state_path:
        raise InvalidRequest("--state is required")
    return load_state(config.state_path)


def _report_text(state, report):
    kind = "pure" if state.is_pure else "mixed"
    lines = [
        f"state: dims {state.shape} ({kind})",
        f"measure: {report.measure_kind}",
        f"cut_mode: {report.cut_mode}",
        f"cuts: {report.cut_count}",
    ]
    width = max(len(cv.cut.label) for cv in report.per_cut)
    lines += [f"  {cv.cut.label:<{width}}  {fmt(cv.value)}" for cv in report.per_cut]
    lines.append(f"E_bar = {fmt(report.e_bar)}")
    return "\n".join(lines) + "\n"


def cmd_measure(config: RunConfig) -> int:
    state = _load(config)
    report = aggregate.free_entanglement(state, config.measure_kind, config.cut_mode)
    if config.output_format == "csv":
        rows = [(cv.cut.label, fmt_csv(cv.value)) for cv in report.per_cut]
        rows.append(("E_bar", fmt_csv(report.e_bar)))
        _emit(_csv_text(("cut", "value"), rows), config)
    else:
        _emit(_report_text(state, report), config)
    return EXIT_OK


def cmd_classify(config: RunConfig) -> int:
    state = _load(config)
    verdict = aggregate.classify(state, config.measure_kind, config.tol, config.cut_mode)
    report = verdict.report
    if config.output_format == "csv":
        rows = [
            (cv.cut.label, fmt_csv(cv.value), "entangled" if flag else "not-detected")
            for cv, flag in zip(report.per_cut, verdict.per_cut_flags)
        ]
        text = _csv_text(("cut", "value", "flag"), rows)
    else:
        width = max(len(cv.cut.label) for cv in report.per_cut)
        lines = [
            f"verdict: {verdict.verdict}",
            f"measure: {report.measure_kind}",
            f"tol: {config.tol:g}",
        ]
        lines += [
            f"  {cv.cut.label:<{width}}  {fmt(cv.value)}  {'entangled' if flag else 'not-detected'}"
            for cv, flag in zip(report.per_cut, verdict.per_cut_flags)
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, config)
    return EXIT_OK


def _coeffs_from_floats(values):
    if values is None or len(values) != 16:
        raise InvalidRequest("--coeffs needs 16 numbers: re1 im1 re2 im2 ... re8 im8")
    return [complex(values[2 * k], values[2 * k + 1]) for k in range(8)]


def cmd_family(config: RunConfig, family: str, coeffs=None, n=None, x=None) -> int:
    if family == "three-qubit":
        c = _coeffs_from_floats(coeffs)
        closed = aggregate.three_qubit_closed_form(c)
        generic = aggregate.free_entanglement(aggregate.build_three_qubit_state(c), "concurrence")
        diffs = [abs(a - b) for a, b in zip(closed.values, generic.values)]
        diff = max(diffs + [abs(closed.e_bar - generic.e_bar)])
        lines = ["family: three-qubit"]
        for cv_c, cv_g in zip(closed.per_cut, generic.per_cut):
            lines.append(f"  {cv_c.cut.label}  closed {fmt(cv_c.value)}  generic {fmt(cv_g.value)}")
        closed_val, generic_val = closed.e_bar, generic.e_bar
    elif family == "isotropic":
        if n is None or x is None:
            raise InvalidRequest("family isotropic needs --n and --x")
        closed_val = aggregate.isotropic_closed_form(n, x)
        generic_val = aggregate.free_entanglement(aggregate.isotropic_state(n, x), "negativity", config.cut_mode).e_bar
        diff = abs(closed_val - generic_val)
        lines = [f"family: isotropic n={n} x={x:g}"]
    else:
        raise InvalidRequest(f"unknown family {family!r}")
    lines += [
        f"closed_form = {fmt(closed_val)}",
        f"generic     = {fmt(generic_val)}",
        f"abs_diff    = {diff:.3e}",
    ]
    ok = diff <= FAMILY_TOL
    lines.append("status: " + ("agree" if ok else f"MISMATCH (> {FAMILY_TOL:g})"))
    _emit("\n".join(lines) + "\n", config)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_sweep(config: RunConfig, n: int, x_min: float, x_max: float, steps: int) -> int:
    if n is None:
        raise InvalidRequest("sweep isotropic needs --n")
    if steps < 2:
        raise InvalidRequest(f"--steps must be >= 2, got {steps}")
    rows = aggregate.sweep_isotropic(n, x_min, x_max, steps, config.cut_mode)
    text = _csv_text(
        ("x", "e_bar_closed", "e_bar_generic"),
        [(fmt_csv(x), fmt_csv(c), fmt_csv(g)) for x, c, g in rows],
    )
    _emit(text, config)
    return EXIT_OK


def _finite_float(s):
    x = float(s)
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {s!r}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measure", choices=MEASURES, help="default: concurrence (pure) / negativity (mixed)")
    common.add_argument("--tol", type=_finite_float, default=aggregate.DEFAULT_TOL)
    common.add_argument("--cut-mode", choices=CUT_MODES, default="literal")
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="multient", description="Multiparticle entanglement averaged over bipartite groupings."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="per-cut values and their average")
    p.add_argument("--state", required=True)
    p = sub.add_parser("classify", parents=[common], help="grouping-based separability verdict")
    p.add_argument("--state", required=True)

    p = sub.add_parser("family", help="closed-form families vs the generic pipeline")
    fam = p.add_subparsers(dest="family", required=True)
    f = fam.add_parser("three-qubit", parents=[common])
    f.add_argument("--coeffs", nargs=16, type=_finite_float, required=True, metavar="F")
    f = fam.add_parser("isotropic", parents=[common])
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--x", type=_finite_float, required=True)

    p = sub.add_parser("sweep", help="tabulate a family over a parameter grid")
    sw = p.add_subparsers(dest="family", required=True)
    f = sw.add_parser("isotropic", parents=[common])
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--x-min", type=_finite_float, default=0.0)
    f.add_argument("--x-max", type=_finite_float, default=1.0)
    f.add_argument("--steps", type=int, default=21)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            state_path=getattr(args, "state", None),
            measure_kind=args.measure,
            tol=args.tol,
            cut_mode=args.cut_mode,
            output_format=args.format,
            output_path=args.out,
        )
        if args.command == "measure":
            return cmd_measure(config)
        if args.command == "classify":
            return cmd_classify(config)
        if args.command == "family":
            return cmd_family(
                config, args.family, coeffs=getattr(args, "coeffs", None), n=getattr(args, "n", None),
                x=getattr(args, "x", None),
            )
        return cmd_sweep(config, args.n, args.x_min, args.x_max, args.steps)
    except (InvalidRequest, MeasureError) as exc:
        print(f"multient: error: {exc}", file=sys.stderr)
        return EXIT_REQUEST
    except (StateError, NumericError, OSError) as exc:
        print(f"multient: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
