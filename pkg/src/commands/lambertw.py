import argparse

from src.lambertw import lambert_w0
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _lambertw(args: argparse.Namespace) -> str:
    logger.info(f"Evaluating W0({args.z})")
    return f"{lambert_w0(args.z)!r}\n"


def register_lambertw_command(subparsers: argparse._SubParsersAction) -> None:
    """Register the lambertw command"""
    parser = subparsers.add_parser(
        "lambertw",
        help="Principal branch W0(z) for z >= 0",
        description="Print W0(z), the solution of w e^w = z on [0, inf), in full precision.",
    )
    parser.add_argument("z", type=float, help="Nonnegative argument (decimal or e-notation)")
    parser.set_defaults(handler=_lambertw)
