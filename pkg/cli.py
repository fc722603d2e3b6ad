#!/usr/bin/env python3
import argparse
import csv
import io
import json
import logging
import os
import signal
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, TypeVar

import sympy

import invariants
import moduli
import radial
import suites
from config.error_messages import ErrorMessages, InfoMessages, TroubleshootingMessages
from config.solver_config import BoundaryConfig, IntegratorConfig, OutputConfig, SweepConfig
from exceptions import (
    BlockError,
    ConfigurationError,
    HypSpinorError,
    IntegrationError,
    SpectrumError,
)
from invariants import BlockLabel

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one command-line run."""

    rel_tol: float = IntegratorConfig.RTOL
    abs_tol: float = IntegratorConfig.ATOL
    fmt: str = OutputConfig.DEFAULT_FORMAT
    r_max: float = IntegratorConfig.DEFAULT_RMAX
    samples: int = IntegratorConfig.DEFAULT_SAMPLES
    L_max: int = SweepConfig.DEFAULT_LMAX
    A4: float = 1.0
    threads: int = SweepConfig.DEFAULT_THREADS
    suite: str = "all"
    out: Optional[Path] = None

    def validate(self) -> "RunConfig":
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ConfigurationError(
                ErrorMessages.INVALID_TOLERANCE.format(value=min(self.rel_tol, self.abs_tol))
            )
        if self.samples < IntegratorConfig.MIN_SAMPLES:
            raise ConfigurationError(
                ErrorMessages.INVALID_SAMPLES.format(
                    minimum=IntegratorConfig.MIN_SAMPLES, value=self.samples
                )
            )
        if self.r_max < IntegratorConfig.MIN_RMAX:
            raise ConfigurationError(
                ErrorMessages.INVALID_RADIUS.format(
                    minimum=IntegratorConfig.MIN_RMAX, value=self.r_max
                )
            )
        if self.L_max < SweepConfig.MIN_LMAX:
            raise ConfigurationError(
                ErrorMessages.INVALID_LMAX.format(minimum=SweepConfig.MIN_LMAX, value=self.L_max)
            )
        if self.fmt not in OutputConfig.FORMATS:
            raise ConfigurationError(
                ErrorMessages.INVALID_FORMAT.format(
                    value=self.fmt, choices=", ".join(OutputConfig.FORMATS)
                )
            )
        if self.threads < 1:
            raise ConfigurationError(
                ErrorMessages.INVALID_THREADS.format(
                    var=SweepConfig.THREADS_ENV_VAR, value=self.threads
                )
            )
        return self


def threads_from_env(environ: Mapping[str, str] = os.environ) -> int:
    raw = environ.get(SweepConfig.THREADS_ENV_VAR)
    if raw is None or raw == "":
        return SweepConfig.DEFAULT_THREADS
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(
            ErrorMessages.INVALID_THREADS.format(var=SweepConfig.THREADS_ENV_VAR, value=raw)
        )
    if value < 1:
        raise ConfigurationError(
            ErrorMessages.INVALID_THREADS.format(var=SweepConfig.THREADS_ENV_VAR, value=raw)
        )
    return value


def build_config(args: argparse.Namespace) -> RunConfig:
    threads = args.threads if args.threads is not None else threads_from_env()
    return RunConfig(
        rel_tol=args.tol,
        fmt=args.format,
        r_max=args.rmax,
        samples=args.samples,
        L_max=args.Lmax,
        A4=args.A4,
        threads=threads,
        suite=getattr(args, "suite", "all"),
        out=Path(args.out) if args.out else None,
    ).validate()


def parallel_map(func: Callable[[T], R], items: Sequence[T], threads: int) -> List[R]:
    """Map in a thread pool; results keep the input order."""
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


# ----------------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------------


def plain(value: Any) -> Any:
    """Exact sympy numbers become "p/q" strings, numpy scalars become Python numbers."""
    if isinstance(value, sympy.Basic):
        return str(value)
    if hasattr(value, "item") and not isinstance(value, (list, tuple, dict)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, dict):
        return {k: plain(v) for k, v in value.items()}
    return value


def render(
    rows: Iterable[Mapping[str, Any]],
    columns: Sequence[str],
    fmt: str,
    preamble: Optional[Mapping[str, Any]] = None,
) -> str:
    """JSON object/list or RFC-4180 CSV; CSV preamble goes into leading '#' lines."""
    records = [{c: plain(row[c]) for c in columns} for row in rows]
    if fmt == "json":
        if preamble is None:
            return json.dumps(records, indent=2)
        payload = {k: plain(v) for k, v in preamble.items()}
        payload["rows"] = records
        return json.dumps(payload, indent=2)
    buffer = io.StringIO()
    for key, value in (preamble or {}).items():
        buffer.write(f"# {key}={plain(value)}\r\n")
    writer = csv.DictWriter(buffer, fieldnames=list(columns))
    writer.writeheader()
    for record in records:
        writer.writerow(
            {k: ",".join(map(str, v)) if isinstance(v, list) else v for k, v in record.items()}
        )
    return buffer.getvalue()


def emit(text: str, config: RunConfig) -> None:
    if config.out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    config.out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    print(f"✅ {InfoMessages.TABLE_WRITTEN.format(path=config.out)}", file=sys.stderr)


# ----------------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    report = suites.run_suite(config.suite, config.L_max, config.threads)
    for check in report.checks:
        marker = "✅" if check.passed else "❌"
        print(f"{marker} {check.line()}")
    print(f"\n📊 {report.summary()}")
    return EXIT_OK if report.passed else EXIT_FAILURE


BLOCK_COLUMNS = (
    "K", "L", "dim_S4", "dim_S2", "dim_C4", "dim_C0",
    "kernel_punctured", "kernel_global", "tags",
)


def block_row(label: BlockLabel) -> Dict[str, Any]:
    info = moduli.classify_block(label)
    return {
        "K": label.K,
        "L": label.L,
        **{f"dim_{target}": value for target, value in info.dims.items()},
        "kernel_punctured": info.kernel_dim_punctured,
        "kernel_global": info.kernel_dim_global,
        "tags": ",".join(info.ordered_tags),
    }


def cmd_blocks(args: argparse.Namespace, config: RunConfig) -> int:
    labels = moduli.sweep_labels(config.L_max)
    logger.info(InfoMessages.SWEEP_STARTED.format(count=len(labels), threads=config.threads))
    rows = parallel_map(block_row, labels, config.threads)
    rows.sort(key=lambda row: (row["L"], row["K"]))
    emit(render(rows, BLOCK_COLUMNS, config.fmt), config)
    return EXIT_OK


def _label(args: argparse.Namespace) -> BlockLabel:
    if args.K is None or args.L is None:
        raise ConfigurationError(ErrorMessages.MISSING_BLOCK.format(command=args.command))
    return BlockLabel(args.K, args.L)


def cmd_radial(args: argparse.Namespace, config: RunConfig) -> int:
    label = _label(args)
    profile = radial.integrate(
        label,
        r_max=config.r_max,
        samples=config.samples,
        A4=config.A4,
        rtol=config.rel_tol,
        atol=config.abs_tol,
    )
    rows = [dict(zip(OutputConfig.PROFILE_COLUMNS, row)) for row in profile.rows()]
    preamble = {"block": str(label), "c_inf": profile.c_inf, "A4": config.A4}
    emit(render(rows, OutputConfig.PROFILE_COLUMNS, config.fmt, preamble), config)
    if config.out is not None:
        print(
            f"✅ {InfoMessages.PROFILE_WRITTEN.format(K=label.K, L=label.L, path=config.out)}",
            file=sys.stderr,
        )
    return EXIT_OK


BOUNDARY_COLUMNS = (
    "K", "L", "c_inf", "c_inf_float", "numeric_c_inf", "relative_error",
    "s_inf_plus", "s_inf_minus", "top_eigenvalue", "eigenspace_dim",
)


def boundary_row(label: BlockLabel, A4: float = 1.0) -> Dict[str, Any]:
    value = radial.boundary_spinor(label, A4)
    spectrum = invariants.sigma1_pairing_spectrum()
    return {
        "K": label.K,
        "L": label.L,
        "c_inf": value.c_inf,
        "c_inf_float": float(value.c_inf),
        "numeric_c_inf": value.numeric_c_inf,
        "relative_error": value.relative_error,
        "s_inf_plus": value.s_inf_plus,
        "s_inf_minus": value.s_inf_minus,
        "top_eigenvalue": spectrum.max_eigenvalue,
        "eigenspace_dim": spectrum.eigenspace_dim,
    }


def cmd_boundary(args: argparse.Namespace, config: RunConfig) -> int:
    if args.K is not None or args.L is not None:
        labels = [_label(args)]
    else:
        labels = suites.full_blocks(config.L_max)
    rows = parallel_map(lambda label: boundary_row(label, config.A4), labels, config.threads)
    emit(render(rows, BOUNDARY_COLUMNS, config.fmt), config)
    agrees = all(row["relative_error"] <= BoundaryConfig.RELATIVE_TOLERANCE for row in rows)
    return EXIT_OK if agrees else EXIT_FAILURE


def cmd_indicial(args: argparse.Namespace, config: RunConfig) -> int:
    spectrum = radial.dirac_sq_order0_spectrum()
    delta_minus, delta_plus = radial.critical_weights(spectrum.lambda_min)
    record: Dict[str, Any] = {
        "order0_min": spectrum.min_eigenvalue,
        "minimizers": [f"({m3},{mp})" for m3, mp in spectrum.minimizers],
        "lambda_min": spectrum.lambda_min,
        "delta_minus": delta_minus,
        "delta_plus": delta_plus,
    }
    if args.L is not None:
        data = radial.indicial_data(BlockLabel(args.L % 2 if args.K is None else args.K, args.L))
        record.update(
            {
                "L": args.L,
                "lambda_up": list(data.lambda_rows[0]),
                "lambda_down": list(data.lambda_rows[1]),
                "origin_exponents": list(data.origin_exponents),
                "regular_exponent": data.regular_exponent,
                "rejected_exponent": data.rejected_exponent,
                "infinity_decay": data.infinity_decay,
            }
        )
    emit(render([record], list(record), config.fmt), config)
    return EXIT_OK


SPECTRUM_COLUMNS = ("K", "L", "re", "im")


def _projection(project: Callable[[moduli.DeformationSpectrum], moduli.DeformationSpectrum]):
    def command(args: argparse.Namespace, config: RunConfig) -> int:
        if not args.spectrum:
            raise ConfigurationError(ErrorMessages.MISSING_SPECTRUM.format(command=args.command))
        source = moduli.load_spectrum(args.spectrum, real=args.real)
        projected = project(source)
        emit(render(moduli.spectrum_to_records(projected), SPECTRUM_COLUMNS, config.fmt), config)
        print(
            f"📊 {len(projected)}/{len(source)} coefficients kept"
            + (" (fillable)" if projected == source else ""),
            file=sys.stderr,
        )
        return EXIT_OK

    return command


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    "verify": cmd_verify,
    "blocks": cmd_blocks,
    "radial": cmd_radial,
    "boundary": cmd_boundary,
    "indicial": cmd_indicial,
    "bland": _projection(moduli.bland_project),
    "tangent": _projection(moduli.tangent_project),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--K", type=int, help="U1 weight K of the block")
    common.add_argument("--L", type=int, help="SU2 weight L of the block")
    common.add_argument("--Lmax", type=int, default=SweepConfig.DEFAULT_LMAX,
                        help=f"Largest L in sweeps (default: {SweepConfig.DEFAULT_LMAX})")
    common.add_argument("--rmax", type=float, default=IntegratorConfig.DEFAULT_RMAX,
                        help=f"Outer radius of profiles (default: {IntegratorConfig.DEFAULT_RMAX})")
    common.add_argument("--samples", type=int, default=IntegratorConfig.DEFAULT_SAMPLES,
                        help=f"Grid points of profiles (default: {IntegratorConfig.DEFAULT_SAMPLES})")
    common.add_argument("--A4", type=float, default=1.0, help="Amplitude of a4 (default: 1)")
    common.add_argument("--tol", type=float, default=IntegratorConfig.RTOL,
                        help=f"Relative integrator tolerance (default: {IntegratorConfig.RTOL})")
    common.add_argument("--format", choices=OutputConfig.FORMATS, default=OutputConfig.DEFAULT_FORMAT,
                        help="Output format (default: json)")
    common.add_argument("--out", help="Write output to PATH instead of standard output")
    common.add_argument("--threads", type=int,
                        help=f"Worker threads (default: ${SweepConfig.THREADS_ENV_VAR} or 1)")
    common.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")

    parser = argparse.ArgumentParser(
        prog="hypspinor",
        description="Harmonic spinors on complex hyperbolic space and CR deformations of S3",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", parents=[common], help="Run verification suites")
    verify.add_argument("--suite", choices=OutputConfig.SUITES, default="all",
                        help="Suite to run (default: all)")
    sub.add_parser("blocks", parents=[common], help="Classify every block up to --Lmax")
    sub.add_parser("radial", parents=[common], help="Integrate the radial system on one block")
    sub.add_parser("boundary", parents=[common], help="Asymptotic coefficient and boundary spinor")
    sub.add_parser("indicial", parents=[common], help="Order-0 spectrum and critical weights")
    for name, text in (("bland", "Fillability projection"), ("tangent", "Self-dual tangent projection")):
        projection = sub.add_parser(name, parents=[common], help=f"{text} of a spectrum file")
        projection.add_argument("--spectrum", help="JSON list of {K, L, re, im} records")
        projection.add_argument("--real", action="store_true",
                                help="Records are K <= 0 representatives of a real deformation")
    return parser


def signal_handler(signum, frame):
    """Handle Ctrl+C gracefully"""
    print("\n\n⚠️  Interrupted by user", file=sys.stderr)
    sys.exit(0)


def main(argv: Optional[Sequence[str]] = None) -> int:
    signal.signal(signal.SIGINT, signal_handler)

    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        config = build_config(args)
        return COMMANDS[args.command](args, config)
    except ConfigurationError as e:
        print(f"\n❌ Configuration Error: {e}", file=sys.stderr)
        print(
            f"\n💡 {TroubleshootingMessages.CONFIGURATION_HINT.format(var=SweepConfig.THREADS_ENV_VAR)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    except BlockError as e:
        print(f"\n❌ Block Error: {e}", file=sys.stderr)
        print(f"\n💡 {TroubleshootingMessages.INADMISSIBLE_BLOCK_HINT}", file=sys.stderr)
        return EXIT_USAGE
    except (SpectrumError, FileNotFoundError) as e:
        print(f"\n❌ Spectrum Error: {e}", file=sys.stderr)
        print(f"\n💡 {TroubleshootingMessages.SPECTRUM_HINT}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrationError as e:
        print(f"\n❌ Integration Error: {e}", file=sys.stderr)
        print(f"\n💡 {TroubleshootingMessages.INTEGRATION_HINT}", file=sys.stderr)
        return EXIT_FAILURE
    except HypSpinorError as e:
        print(f"\n❌ Error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
