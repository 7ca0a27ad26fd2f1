import argparse

from src.commands.common import potential_from_file
from src.formatters import format_json
from src.potentials import BallConvention, temperedness
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _tempered(args: argparse.Namespace) -> str:
    pot = potential_from_file(args.potential)
    result = temperedness(pot, args.beta, BallConvention(args.B_convention), tol=args.tol)
    return format_json(
        {"C": result.C_beta, "C_err": result.C_err, "R": result.R_beta, "R_err": result.R_err}
    )


def register_tempered_command(subparsers: argparse._SubParsersAction) -> None:
    """Register the tempered command"""
    parser = subparsers.add_parser(
        "tempered",
        help="Temperedness integrals C(beta) and R(beta) of a potential",
        description="Integrate a JSON pair potential and print C, C_err, R and R_err.",
    )
    parser.add_argument("--potential", required=True, help="JSON potential document")
    parser.add_argument("--beta", type=float, required=True, help="Inverse temperature")
    parser.add_argument(
        "--B-convention",
        dest="B_convention",
        choices=[c.value for c in BallConvention],
        default=BallConvention.VOLUME.value,
        help="Read |B| as unit-ball volume (default) or unit-sphere area",
    )
    parser.add_argument("--tol", type=float, default=None, help="Quadrature tolerance (default QUAD_TOL)")
    parser.set_defaults(handler=_tempered)
