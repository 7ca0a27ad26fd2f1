"""
Command-line surface.

Every subcommand is registered by a `register_*_command` function in
src/commands and stores its handler with `set_defaults(handler=...)`. A
handler takes the parsed namespace and returns the text written to stdout.
"""

import argparse
from collections.abc import Sequence
from typing import NoReturn

from src.commands import register_all_commands
from src.exceptions import ArgumentError
from src.utils.logger import get_logger

logger = get_logger(__name__)

PROG = "virial-bounds"


class StrictArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors surface as ArgumentError (exit 1)."""

    def error(self, message: str) -> NoReturn:
        raise ArgumentError(f"{self.prog}: {message}")


def build_parser() -> StrictArgumentParser:
    parser = StrictArgumentParser(
        prog=PROG,
        description="Virial coefficient and convergence-radius bounds via the Lambert W-function.",
    )
    subparsers = parser.add_subparsers(
        dest="command", required=True, parser_class=StrictArgumentParser, metavar="COMMAND"
    )
    register_all_commands(subparsers)
    return parser


def run(argv: Sequence[str] | None = None) -> str:
    """Parse argv, dispatch to the selected handler and return its output."""
    args = build_parser().parse_args(argv)
    logger.debug(f"Dispatching {args.command} with {vars(args)}")
    return args.handler(args)


__all__ = ["StrictArgumentParser", "build_parser", "run"]
