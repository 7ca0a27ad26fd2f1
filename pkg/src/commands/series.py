import argparse
from pathlib import Path

from src.commands.common import positive_int
from src.series import compose, lagrange_invert, revert, tree_function_series
from src.series.io import format_series, read_series
from src.utils.logger import get_logger

logger = get_logger(__name__)


# ============================================================================
# REVERT
# ============================================================================


def _revert(args: argparse.Namespace) -> str:
    series = read_series(Path(args.input))
    logger.info(f"Reverting a series of order {series.order} to order {args.order}")
    return format_series(revert(series, args.order))


# ============================================================================
# COMPOSE
# ============================================================================


def _compose(args: argparse.Namespace) -> str:
    outer = read_series(Path(args.outer), args.order)
    inner = read_series(Path(args.inner), args.order)
    return format_series(compose(outer, inner))


# ============================================================================
# TREE FUNCTION AND LAGRANGE INVERSION
# ============================================================================


def _tree(args: argparse.Namespace) -> str:
    return format_series(tree_function_series(args.order))


def _lagrange(args: argparse.Namespace) -> str:
    # phi enters only through its first order coefficients
    phi = read_series(Path(args.phi), args.order - 1)
    return format_series(lagrange_invert(phi, args.order))


def register_series_commands(subparsers: argparse._SubParsersAction) -> None:
    """Register the series command family"""
    series = subparsers.add_parser(
        "series",
        help="Truncated power series operations",
        description="Series files hold one 'n value' line per coefficient; value is p/q or a decimal.",
    )
    ops = series.add_subparsers(dest="op", required=True, metavar="OP")

    rev = ops.add_parser("revert", help="Compositional inverse of a series with c0 = 0, c1 != 0")
    rev.add_argument("--in", dest="input", required=True, help="Series file")
    rev.add_argument("--order", type=positive_int, required=True, help="Truncation order of the result")
    rev.set_defaults(handler=_revert)

    comp = ops.add_parser("compose", help="outer(inner(x)); inner must have c0 = 0")
    comp.add_argument("--outer", required=True, help="Series file of the outer series")
    comp.add_argument("--inner", required=True, help="Series file of the inner series")
    comp.add_argument(
        "--order", type=positive_int, default=None,
        help="Declare both inputs at this order (zero padded); default: as written",
    )
    comp.set_defaults(handler=_compose)

    tree = ops.add_parser("tree", help="Tree function sum n^(n-1)/n! x^n")
    tree.add_argument("--order", type=positive_int, required=True, help="Truncation order")
    tree.set_defaults(handler=_tree)

    lag = ops.add_parser("lagrange", help="Solve s = y phi(s) by Lagrange inversion")
    lag.add_argument("--phi", required=True, help="Series file of phi, phi(0) != 0; zero padded to order - 1")
    lag.add_argument("--order", type=positive_int, required=True, help="Truncation order of s(y)")
    lag.set_defaults(handler=_lagrange)
