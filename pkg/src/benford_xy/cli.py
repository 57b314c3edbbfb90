"""Command-line frontend.

Subcommands: digits (first-digit report for a CSV column or a generator),
scan (violation curve over lambda), scale (finite-size transition estimates
and the shift-exponent fit), crossover (finite-temperature ridge lines).

Every run writes a JSON manifest naming the command, the fully resolved
configuration, the tool version, a timestamp, and every output file, so a
run can be reproduced from its manifest alone. Bulk data goes to CSV by
default (or JSON with --format json); floats are written with repr, which
round-trips exactly.

Exit codes: 0 success, 2 degenerate data, 3 configuration/input error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import enum
import json
import math
import os
import re
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, criticality, windowscan
from .errors import (
    BenfordXYError,
    ConfigurationError,
    DegenerateWindowError,
    DomainError,
    EmptyHistogramError,
    InsufficientRidgeError,
    MixedSideError,
    NoTransitionError,
    SingularFitError,
)
from .firstdigit import DistKind, ReferenceDistribution, histogram, probabilities
from .violation import Metric, violation
from .windowscan import Observable, ScanConfig, scan

OUTPUT_DIR_ENV = "BENFORD_XY_OUT"

EXIT_OK = 0
EXIT_DEGENERATE = 2
EXIT_CONFIG = 3
EXIT_NUMERICAL = 4

_DEGENERATE_ERRORS = (DegenerateWindowError, EmptyHistogramError)
_NUMERICAL_ERRORS = (
    DomainError,
    SingularFitError,
    NoTransitionError,
    MixedSideError,
    InsufficientRidgeError,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract reserves 2 for
    # degenerate data and uses 3 for configuration problems
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _parse_lambda_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigurationError(f"--lambda expects start:stop:step, got {text!r}")
    try:
        a, b, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigurationError(f"--lambda expects numbers, got {text!r}") from exc
    return a, b, step


def _parse_t(text: str) -> float:
    if text == "zero":
        return math.inf
    try:
        t = float(text)
    except ValueError as exc:
        raise ConfigurationError(f"--t expects a number or 'zero', got {text!r}") from exc
    if not (t > 0):
        raise ConfigurationError("--t must be positive (or 'zero')")
    return 1.0 / t


def _parse_n_sites(text: str) -> int | None:
    if text.lower() == "none":
        return None
    try:
        return int(text)
    except ValueError as exc:
        raise ConfigurationError(f"--n-sites expects an integer or 'none', got {text!r}") from exc


def _dist_from_flags(args) -> ReferenceDistribution:
    kind = DistKind(args.dist)
    if kind is DistKind.POISSON:
        if args.kappa is None:
            raise ConfigurationError("--dist poisson requires --kappa")
        return ReferenceDistribution.poisson(args.kappa)
    if args.kappa is not None:
        raise ConfigurationError("--kappa only applies to --dist poisson")
    return ReferenceDistribution(kind)


def _outdir(args) -> Path:
    out = args.out or os.environ.get(OUTPUT_DIR_ENV) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _jsonify(value):
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, ReferenceDistribution):
        return value.label()
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return value


def _write_manifest(outdir: Path, command: str, config: dict, outputs: list[str]) -> Path:
    manifest = {
        "command": command,
        "config": _jsonify(config),
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "outputs": outputs,
    }
    path = outdir / f"{command}_manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _csv_cell(v):
    if isinstance(v, (np.floating, np.integer)):
        v = v.item()
    return repr(v) if isinstance(v, float) else v


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])


def _write_json_rows(path: Path, header: list[str], rows) -> None:
    data = [dict(zip(header, row)) for row in rows]
    path.write_text(json.dumps(_jsonify(data), indent=2) + "\n")


def _write_rows(outdir: Path, stem: str, fmt: str, header: list[str], rows) -> str:
    name = f"{stem}.{fmt}"
    if fmt == "json":
        _write_json_rows(outdir / name, header, rows)
    else:
        _write_csv(outdir / name, header, rows)
    return name


_GENERATOR_RE = re.compile(r"^logmantissa:(\d+)$")


def _load_values(spec: str, seed: int) -> np.ndarray:
    """CSV column (first column, optional header) or a generator spec.

    logmantissa:N draws N values 10^u with u uniform on [0, 1); their first
    digits follow the Benford law exactly in distribution.
    """
    m = _GENERATOR_RE.match(spec)
    if m:
        rng = np.random.default_rng(seed)
        return 10.0 ** rng.random(int(m.group(1)))
    values = []
    try:
        with open(spec, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or not row[0].strip():
                    continue
                cell = row[0].strip()
                try:
                    values.append(float(cell))
                except ValueError:
                    if lineno == 1:
                        continue  # header line
                    raise ConfigurationError(
                        f"{spec}:{lineno}: not a number: {cell!r}"
                    ) from None
    except OSError as exc:
        raise ConfigurationError(f"cannot read {spec}: {exc}") from exc
    if not values:
        raise ConfigurationError(f"{spec}:1: no numeric data found")
    return np.asarray(values)


def cmd_digits(args) -> int:
    values = _load_values(args.input, args.seed)
    if values.size < 10:
        raise ConfigurationError(f"need at least 10 values, got {values.size}")
    if values.size and np.all(values == values.flat[0]):
        raise DegenerateWindowError("input column is constant")
    dist = _dist_from_flags(args)
    hist = histogram(values)
    report = {
        "input": args.input,
        "values": int(values.size),
        "counts": list(hist.counts),
        "total": hist.total,
        "skipped": hist.skipped,
        "distribution": dist.label(),
        "probabilities": probabilities(dist),
        "violations": {
            metric.value: violation(hist, dist, metric) for metric in Metric
        },
    }
    outdir = _outdir(args)
    report_name = "digits_report.json"
    (outdir / report_name).write_text(json.dumps(_jsonify(report), indent=2) + "\n")
    flags = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    manifest = _write_manifest(outdir, "digits", flags, [report_name])

    probs = probabilities(dist)
    freq = hist.frequencies()
    print(f"digits of {values.size} values ({hist.skipped} skipped):")
    print("digit  count  observed  expected")
    for d in range(9):
        print(f"    {d + 1}  {hist.counts[d]:>5}  {freq[d]:8.5f}  {probs[d]:8.5f}")
    for metric in Metric:
        print(f"{metric.value}: {report['violations'][metric.value]!r}")
    print(f"wrote {outdir / report_name} and {manifest}")
    return EXIT_OK


def _scan_config_from_flags(args) -> ScanConfig:
    a, b, step = _parse_lambda_range(args.lambda_range)
    return ScanConfig(
        observable=Observable(args.observable),
        gamma=args.gamma,
        lambda_range=(a, b),
        lambda_step=step,
        window_width=args.window,
        samples_per_window=args.samples,
        dist=_dist_from_flags(args),
        metric=Metric(args.metric),
        beta_tilde=_parse_t(args.t),
        n_sites=_parse_n_sites(args.n_sites),
    )


def _config_echo(config: ScanConfig) -> dict:
    return {
        "observable": config.observable,
        "gamma": config.gamma,
        "lambda_range": list(config.lambda_range),
        "lambda_step": config.lambda_step,
        "window_width": config.window_width,
        "samples_per_window": config.samples_per_window,
        "dist": config.dist,
        "metric": config.metric,
        "t_tilde": config.t_tilde,
        "n_sites": config.n_sites,
    }


def cmd_scan(args) -> int:
    config = _scan_config_from_flags(args)
    result = scan(config, workers=args.workers)
    outdir = _outdir(args)
    outputs = [
        _write_rows(outdir, "scan", args.format, ["lambda_mid", "delta"], result.points)
    ]
    manifest_config = _config_echo(config) | {
        "workers": args.workers,
        "degenerate_windows": list(result.degenerate_windows),
    }
    manifest = _write_manifest(outdir, "scan", manifest_config, outputs)
    print(
        f"scan: {len(result.points)} points, {len(result.degenerate_windows)} degenerate; "
        f"wrote {', '.join(str(outdir / o) for o in outputs)} and {manifest}"
    )
    return EXIT_OK


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"expected comma-separated numbers, got {text!r}") from exc


def cmd_scale(args) -> int:
    sizes = _parse_int_list(args.n_list)
    if not sizes:
        raise ConfigurationError("--n-list must name at least one chain length")
    base = _scan_config_from_flags(args)
    signature = criticality.Signature(args.signature) if args.signature != "auto" \
        else criticality.default_signature(base.dist)
    estimates = []
    for n in sizes:
        result = scan(dataclasses.replace(base, n_sites=n), workers=args.workers)
        try:
            fit_range = criticality.auto_fit_range(
                result, signature, fit_half=args.fit_half, smooth_half=args.smooth_half
            )
            estimates.append(criticality.locate_transition(result, fit_range, signature))
        except (NoTransitionError, ConfigurationError) as exc:
            raise NoTransitionError(f"n_sites={n}: {exc}") from exc
    fit = criticality.scaling_exponent(estimates, lambda_c=args.lambda_c)
    outdir = _outdir(args)
    outputs = [
        _write_rows(
            outdir, "scale", args.format, ["n_sites", "lambda_c_n"], fit.pairs
        )
    ]
    fit_block = {
        "exponent": fit.exponent,
        "prefactor": fit.prefactor,
        "intercept": fit.line.intercept,
        "rms_residual": fit.line.rms_residual,
        "lambda_c": args.lambda_c,
        "signature": signature,
        "estimates": [
            {
                "n_sites": e.n_sites,
                "lambda_c_n": e.lambda_c_n,
                "signature": e.signature,
                "fit_range": list(e.fit_range),
                "fit_rms_residual": e.fit.rms_residual,
            }
            for e in estimates
        ],
    }
    fit_name = "scale_fit.json"
    (outdir / fit_name).write_text(json.dumps(_jsonify(fit_block), indent=2) + "\n")
    outputs.append(fit_name)
    manifest_config = _config_echo(base) | {
        "n_list": sizes,
        "fit_half": args.fit_half,
        "smooth_half": args.smooth_half,
        "lambda_c": args.lambda_c,
        "signature": signature,
        "workers": args.workers,
    }
    manifest = _write_manifest(outdir, "scale", manifest_config, outputs)
    print(f"scale: exponent = {fit.exponent!r}, prefactor = {fit.prefactor!r}")
    print(f"wrote {', '.join(str(outdir / o) for o in outputs)} and {manifest}")
    return EXIT_OK


def cmd_crossover(args) -> int:
    ts = _parse_float_list(args.t_list)
    quantities = (
        [criticality.CrossoverQuantity(args.quantity)]
        if args.quantity != "both"
        else list(criticality.CrossoverQuantity)
    )
    grid = criticality.RidgeGrid(span=args.span, step=args.step)
    dist = _dist_from_flags(args)
    outdir = _outdir(args)
    outputs = []
    lines_block = {}
    for quantity in quantities:
        lines = criticality.crossover_lines(
            quantity,
            args.gamma,
            ts,
            grid,
            window_ratio=args.window_ratio,
            samples=args.samples,
            dist=dist,
            metric=Metric(args.metric),
            workers=args.workers,
        )
        outputs.append(
            _write_rows(
                outdir,
                f"crossover_{quantity.value}",
                args.format,
                ["t_tilde", "lambda", "branch"],
                [(t, lam, branch) for lam, t, branch in lines.ridge_points],
            )
        )
        lines_block[quantity.value] = {
            "left": {
                "slope": lines.left.slope,
                "intercept": lines.left.intercept,
                "rms_residual": lines.left.rms_residual,
            },
            "right": {
                "slope": lines.right.slope,
                "intercept": lines.right.intercept,
                "rms_residual": lines.right.rms_residual,
            },
            "warnings": list(lines.warnings),
        }
        print(
            f"crossover {quantity.value}: left slope {lines.left.slope!r}, "
            f"right slope {lines.right.slope!r}"
        )
    lines_name = "crossover_lines.json"
    (outdir / lines_name).write_text(json.dumps(_jsonify(lines_block), indent=2) + "\n")
    outputs.append(lines_name)
    manifest_config = {
        "gamma": args.gamma,
        "t_list": ts,
        "span": args.span,
        "step": args.step,
        "window_ratio": args.window_ratio,
        "samples": args.samples,
        "dist": dist,
        "metric": args.metric,
        "quantity": args.quantity,
        "workers": args.workers,
    }
    manifest = _write_manifest(outdir, "crossover", manifest_config, outputs)
    print(f"wrote {', '.join(str(outdir / o) for o in outputs)} and {manifest}")
    return EXIT_OK


def _add_common_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help=f"output directory (or ${OUTPUT_DIR_ENV})")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--workers", type=int, default=1)


def _add_dist_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dist", choices=[k.value for k in DistKind], default="benford")
    p.add_argument("--kappa", type=float, default=None)
    p.add_argument(
        "--metric", choices=[m.value for m in Metric], default="mean"
    )


def _add_scan_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--observable", choices=[o.value for o in Observable], default="mz")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--n-sites", default="none", help="even chain length or 'none'")
    p.add_argument("--t", default="zero", help="reduced temperature or 'zero'")
    p.add_argument(
        "--lambda", dest="lambda_range", default="0.8:1.2:0.002", help="start:stop:step"
    )
    p.add_argument("--window", type=float, default=0.02, help="window width in lambda")
    p.add_argument("--samples", type=int, default=10_000, help="samples per window")
    _add_dist_flags(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="benford-xy", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("digits", help="first-digit report for a data column")
    p.add_argument("input", help="CSV path or generator spec like logmantissa:10000")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    _add_dist_flags(p)
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_digits)

    p = sub.add_parser("scan", help="violation curve over a lambda range")
    _add_scan_flags(p)
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("scale", help="finite-size transitions and shift exponent")
    _add_scan_flags(p)
    p.add_argument("--n-list", default="14,20,24,30,34,40", help="comma-separated chain lengths")
    p.add_argument(
        "--signature",
        choices=["auto"] + [s.value for s in criticality.Signature],
        default="auto",
    )
    p.add_argument("--fit-half", type=float, default=criticality.FIT_HALF_WIDTH)
    p.add_argument("--smooth-half", type=float, default=criticality.SMOOTH_HALF_WIDTH)
    p.add_argument("--lambda-c", type=float, default=criticality.LAMBDA_C)
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("crossover", help="finite-temperature crossover lines")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument(
        "--t-list",
        default=",".join(repr(float(t)) for t in np.linspace(1e-4, 5e-4, 25)),
        help="comma-separated reduced temperatures",
    )
    p.add_argument(
        "--quantity",
        choices=["both"] + [q.value for q in criticality.CrossoverQuantity],
        default="both",
    )
    p.add_argument("--span", type=float, default=criticality.RIDGE_SPAN,
                   help="lambda grid half-width in units of t")
    p.add_argument("--step", type=float, default=criticality.RIDGE_STEP,
                   help="lambda grid step in units of t")
    p.add_argument("--window-ratio", type=float, default=criticality.RIDGE_WINDOW_RATIO,
                   help="violation window width in units of t")
    p.add_argument("--samples", type=int, default=criticality.RIDGE_SAMPLES)
    _add_dist_flags(p)
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_crossover)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _DEGENERATE_ERRORS as exc:
        print(f"degenerate data: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except BenfordXYError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
