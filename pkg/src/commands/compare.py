import argparse

from src.commands.common import deliver, positive_int
from src.formatters import OutputFormat, emit
from src.sweeps import FIGURES, SweepSpec, compare_table, run_sweep
from src.utils.logger import get_logger

logger = get_logger(__name__)

TABLE_FORMATS = [OutputFormat.CSV.value, OutputFormat.JSON.value, OutputFormat.SVG.value]


# ============================================================================
# COMPARE
# ============================================================================


def _compare(args: argparse.Namespace) -> str:
    table = compare_table(args.betaB_min, args.betaB_max, args.steps, args.workers)
    return deliver(emit(args.format, table, title="Comparison factors"), args.out)


# ============================================================================
# SWEEP
# ============================================================================


def _sweep(args: argparse.Namespace) -> str:
    if args.figure is not None:
        spec = SweepSpec.for_figure(args.figure, args.min, args.max, args.steps)
        title = f"Figure {args.figure}"
    else:
        spec = SweepSpec(min=args.min, max=args.max, steps=args.steps, outputs=tuple(args.outputs or ()))
        title = ", ".join(spec.outputs)
    table = run_sweep(spec, args.workers)
    return deliver(emit(args.format, table, title=title), args.out)


def _add_output_flags(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument("--steps", type=positive_int, default=101, help="Grid points, endpoints included (default 101)")
    parser.add_argument("--format", choices=TABLE_FORMATS, default=default_format, help=f"Output format (default {default_format})")
    parser.add_argument("--out", default=None, help="Write to this file instead of stdout")
    parser.add_argument("--workers", type=positive_int, default=None, help="Threads for grid evaluation (default SWEEP_WORKERS)")


def register_compare_command(subparsers: argparse._SubParsersAction) -> None:
    """Register the compare command"""
    parser = subparsers.add_parser(
        "compare",
        help="Tabulate r1, r2, f1, f2 and their quotients over beta*B",
        description="CSV columns: betaB,r1,r2,r1_over_r2,f1,f2,f1_over_f2.",
    )
    parser.add_argument("--betaB-min", dest="betaB_min", type=float, default=0.0, help="Lower end (default 0)")
    parser.add_argument("--betaB-max", dest="betaB_max", type=float, required=True, help="Upper end")
    _add_output_flags(parser, OutputFormat.CSV.value)
    parser.set_defaults(handler=_compare)


def register_sweep_command(subparsers: argparse._SubParsersAction) -> None:
    """Register the sweep command"""
    parser = subparsers.add_parser(
        "sweep",
        help="Sweep selected comparison factors, optionally as an SVG chart",
        description="Either pick a figure preset or list the outputs to tabulate.",
    )
    parser.add_argument("--variable", choices=["betaB"], default="betaB", help="Swept variable")
    parser.add_argument("--min", type=float, default=0.0, help="Lower end (default 0)")
    parser.add_argument("--max", type=float, required=True, help="Upper end")
    selection = parser.add_mutually_exclusive_group(required=True)
    selection.add_argument("--figure", type=int, choices=sorted(FIGURES), help="Preset: 1 = r1,r2; 2 = r1/r2; 3 = f1/f2")
    selection.add_argument(
        "--outputs",
        nargs="+",
        choices=["r1", "r2", "f1", "f2", "r1_over_r2", "f1_over_f2", "quotients"],
        help="Columns to tabulate",
    )
    _add_output_flags(parser, OutputFormat.CSV.value)
    parser.set_defaults(handler=_sweep)
