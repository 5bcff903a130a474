"""Command-line front end: run sweeps and pipelines, emit CSV/JSON tables.

Exit codes: 0 success, 1 bad flags or invalid values or I/O failure,
2 verification failure (verify command only). Identical flags and seed
produce byte-identical output files.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .circuits import BellFamily
from .scenarios import (
    SWEEP_PAIRS,
    CkwScanPoint,
    GhzReport,
    SweepResult,
    bipartite_sweep,
    ckw_scan,
    ghz_pipeline,
    uniform_grid,
    verify_circuit_vs_analytic,
)

__all__ = ["RunConfig", "build_parser", "run_command", "write_table", "main", "cli_main"]

_COMMANDS = ("bipartite-sweep", "ghz", "ckw", "verify")


@dataclass(frozen=True)
class RunConfig:
    """Validated flag set for one CLI invocation."""

    command: str
    grid_points: int = 101
    family: BellFamily = BellFamily.PHI_PLUS
    alpha: float | None = None
    output_path: str | None = None
    format: str = "csv"
    seed: int = 0
    samples: int = 20
    tolerance: float = 1e-10
    plot: bool = False

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.grid_points < 2:
            raise ValueError(f"grid must have at least 2 points, got {self.grid_points}")
        if self.tolerance <= 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance!r}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def _sweep_rows(result: SweepResult):
    yield "alpha,c0,c12,c13,c14,c23,c24,c34"
    for i, alpha in enumerate(result.alpha_grid):
        for j, c0 in enumerate(result.c0_grid):
            cells = [_fmt(alpha), _fmt(c0)]
            cells.extend(_fmt(result.concurrence_surfaces[pair][i, j]) for pair in SWEEP_PAIRS)
            yield ",".join(cells)


def _ghz_rows(reports: list[GhzReport]):
    yield "alpha,curve_a,curve_b,curve_c,curve_d,curve_e,p_first_plus,p_second_plus"
    for r in reports:
        yield ",".join(
            _fmt(v)
            for v in (
                r.alpha,
                r.curve_a,
                r.curve_b,
                r.curve_c,
                r.curve_d,
                r.curve_e,
                r.p_first_plus,
                r.p_second_plus,
            )
        )


def _ckw_rows(points: list[CkwScanPoint]):
    yield "alpha,stage,qubit,tau,sum_c2,s"
    for point in points:
        for stage, reports in (("after_first", point.after_first), ("after_second", point.after_second)):
            for report in reports:
                yield ",".join(
                    (
                        _fmt(point.alpha),
                        stage,
                        str(report.qubit),
                        _fmt(report.tau),
                        _fmt(report.sum_sq_concurrence),
                        _fmt(report.saturation),
                    )
                )


def _ckw_payload(reports) -> list[dict]:
    return [
        {
            "qubit": r.qubit,
            "tau": float(r.tau),
            "sum_sq_concurrence": float(r.sum_sq_concurrence),
            "saturation": float(r.saturation),
        }
        for r in reports
    ]


def _json_payload(result) -> dict:
    if isinstance(result, SweepResult):
        return {
            "family": result.family.value,
            "alpha_grid": [float(a) for a in result.alpha_grid],
            "c0_grid": [float(c) for c in result.c0_grid],
            "concurrence_surfaces": {
                f"c{a}{b}": result.concurrence_surfaces[(a, b)].tolist() for a, b in SWEEP_PAIRS
            },
        }
    if result and isinstance(result[0], GhzReport):
        return {
            "reports": [
                {
                    "alpha": float(r.alpha),
                    "curve_a": float(r.curve_a),
                    "curve_b": float(r.curve_b),
                    "curve_c": float(r.curve_c),
                    "curve_d": float(r.curve_d),
                    "curve_e": float(r.curve_e),
                    "p_first_plus": float(r.p_first_plus),
                    "p_second_plus": float(r.p_second_plus),
                    "ckw_after_first": _ckw_payload(r.ckw_after_first),
                    "ckw_after_second": _ckw_payload(r.ckw_after_second),
                }
                for r in result
            ]
        }
    return {
        "points": [
            {
                "alpha": float(p.alpha),
                "after_first": _ckw_payload(p.after_first),
                "after_second": _ckw_payload(p.after_second),
            }
            for p in result
        ]
    }


def write_table(result, format: str, path: str) -> None:
    """Write one result as CSV (12 significant digits) or JSON."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        if format == "json":
            json.dump(_json_payload(result), handle, indent=2)
            handle.write("\n")
            return
        if isinstance(result, SweepResult):
            rows = _sweep_rows(result)
        elif result and isinstance(result[0], GhzReport):
            rows = _ghz_rows(result)
        else:
            rows = _ckw_rows(result)
        for row in rows:
            handle.write(row + "\n")


def _figure_path(output_path: str) -> str:
    figure = Path(output_path).with_suffix(".png")
    if str(figure) == output_path:
        figure = Path(output_path + ".png")
    return str(figure)


def _render_figure(result, path: str) -> None:
    from . import plots  # deferred: matplotlib import is slow

    if isinstance(result, SweepResult):
        plots.render_sweep_figure(result, path)
    elif result and isinstance(result[0], GhzReport):
        plots.render_ghz_figure(result, path)
    else:
        plots.render_ckw_figure(result, path)


def run_command(config: RunConfig) -> int:
    """Execute one validated command; returns the process exit status."""
    if config.command == "verify":
        report = verify_circuit_vs_analytic(config.samples, config.seed, config.tolerance)
        verdict = "PASS" if report.passed else "FAIL"
        print(
            f"max deviation {report.max_deviation:.6e} over {report.n_samples} samples"
            f" x {report.alpha_points} alpha points (tol {report.tolerance:g}): {verdict}"
        )
        return 0 if report.passed else 2

    if config.command == "bipartite-sweep":
        grid = uniform_grid(config.grid_points)
        result = bipartite_sweep(grid, grid, config.family)
    elif config.command == "ghz":
        if config.alpha is not None:
            result = [ghz_pipeline(config.alpha)]
        else:
            result = [ghz_pipeline(float(a)) for a in uniform_grid(config.grid_points)]
    else:
        result = ckw_scan(uniform_grid(config.grid_points))

    write_table(result, config.format, config.output_path)
    if config.plot:
        _render_figure(result, _figure_path(config.output_path))
    return 0


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", required=True, metavar="PATH", help="output file to write")
    parser.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    parser.add_argument("--plot", action="store_true", help="also render a PNG next to the output file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcloner", description="entanglement sweeps for a programmable cloning circuit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = sub.add_parser("bipartite-sweep", help="pairwise output concurrences over the (alpha, c0) grid")
    sweep.add_argument("--grid", type=int, default=101, help="points per grid axis (default 101)")
    sweep.add_argument(
        "--family",
        choices=[family.value for family in BellFamily],
        default=BellFamily.PHI_PLUS.value,
        help="input state family",
    )
    _add_output_flags(sweep)

    ghz = sub.add_parser("ghz", help="three-qubit pipeline: clone, then measure twice")
    ghz.add_argument("--grid", type=int, default=101, help="alpha grid size (default 101)")
    ghz.add_argument("--alpha", type=float, default=None, help="single cloning weight instead of a grid")
    _add_output_flags(ghz)

    ckw = sub.add_parser("ckw", help="monogamy saturation per qubit after each measurement")
    ckw.add_argument("--grid", type=int, default=101, help="alpha grid size (default 101)")
    _add_output_flags(ckw)

    verify = sub.add_parser("verify", help="compare circuit marginals against the closed forms")
    verify.add_argument("--samples", type=int, default=20, help="random input states to draw")
    verify.add_argument("--seed", type=int, default=0, help="RNG seed")
    verify.add_argument("--tol", type=float, default=1e-10, help="worst-deviation threshold")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "verify":
        return RunConfig(command="verify", samples=args.samples, seed=args.seed, tolerance=args.tol)
    common = dict(
        command=args.command,
        grid_points=args.grid,
        output_path=args.out,
        format=args.format,
        plot=args.plot,
    )
    if args.command == "bipartite-sweep":
        return RunConfig(family=BellFamily(args.family), **common)
    if args.command == "ghz":
        return RunConfig(alpha=args.alpha, **common)
    return RunConfig(**common)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run_command(_config_from_args(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def cli_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    cli_main()
