import argparse

from src.commands.bound import register_bound_commands
from src.commands.compare import register_compare_command, register_sweep_command
from src.commands.lambertw import register_lambertw_command
from src.commands.series import register_series_commands
from src.commands.tempered import register_tempered_command
from src.commands.verify import register_verify_command


def register_all_commands(subparsers: argparse._SubParsersAction) -> None:
    """Register all commands"""
    register_lambertw_command(subparsers)
    register_bound_commands(subparsers)
    register_tempered_command(subparsers)
    register_compare_command(subparsers)
    register_sweep_command(subparsers)
    register_series_commands(subparsers)
    register_verify_command(subparsers)
