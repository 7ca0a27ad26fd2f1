import argparse
import math
from fractions import Fraction
from typing import Any

from src.commands.common import positive_int, rational
from src.config import AppConfig
from src.exceptions import VerificationFailure
from src.formatters import (
    OutputFormat,
    format_domination_report,
    format_hypothesis_report,
    format_json,
    format_oracle_rows,
)
from src.potentials import RadialPotential
from src.utils.logger import get_logger
from src.verify import corollary_hypotheses, domination_report
from src.verify.mayer import MAX_CLUSTER_ORDER, cluster_coefficient_1d
from src.verify.models import MODEL_NAMES, ModelSeries, build_model

logger = get_logger(__name__)

# Orders the 1D oracle covers by default; b_5 is supported but slow
ORACLE_ORDER = 4


def oracle_rows(model: ModelSeries) -> list[dict[str, Any]]:
    """Brute-force cluster coefficients next to the model's own b_n."""
    rows: list[dict[str, Any]] = []
    if model.name == "tonks":
        # C_beta may carry a --C override
        sigma = float(Fraction(model.metadata["sigma"]))
        pot = RadialPotential(dim=1, hard_core_radius=sigma)
        for n in range(2, min(model.order, ORACLE_ORDER, MAX_CLUSTER_ORDER) + 1):
            expected = float(model.b_series[n])
            found = cluster_coefficient_1d(pot, model.beta, n)
            rows.append({"n": n, "model": expected, "oracle": found, "error": abs(found - expected)})
    elif model.name == "hard_sphere":
        sigma = float(model.metadata["sigma"])
        analytic = {2: -2.0 * math.pi * sigma**3 / 3.0, 3: 3.0 * math.pi**2 * sigma**6 / 4.0}
        for n in range(2, min(model.order, 3) + 1):
            found = float(model.b_series[n])
            rows.append({"n": n, "model": analytic[n], "oracle": found, "error": abs(found - analytic[n])})
    return rows


def _verify(args: argparse.Namespace) -> str:
    seed = AppConfig.VIRIAL_SEED if args.seed is None else args.seed
    model = build_model(args.model, args.order, sigma=args.sigma, seed=seed, workers=args.workers)
    model = model.with_temperedness(C_beta=args.C, R_beta=args.R, B=args.B)
    order = min(args.order, model.order)

    hypotheses = corollary_hypotheses(model, order)
    report = domination_report(model, order)
    oracle = oracle_rows(model) if args.oracle else []
    metadata = {"seed": seed, **model.metadata}

    if args.format == OutputFormat.JSON:
        document: dict[str, Any] = {
            "metadata": metadata,
            "hypotheses": [h.model_dump() for h in hypotheses],
            "domination": report.model_dump(),
        }
        if args.oracle:
            document["oracle"] = oracle
        output = format_json(document)
    else:
        parts = [" ".join(f"{k}={v}" for k, v in metadata.items())]
        parts += [format_hypothesis_report(h) for h in hypotheses]
        parts.append(format_domination_report(report))
        if args.oracle:
            parts.append(format_oracle_rows(oracle))
        output = "\n\n".join(parts) + "\n"

    failures = list(report.failures)
    failures += [f"hypothesis {h.model}" for h in hypotheses if not h.ok]
    if failures:
        raise VerificationFailure(f"Verification failed: {'; '.join(failures)}", output=output)
    return output


def register_verify_command(subparsers: argparse._SubParsersAction) -> None:
    """Register the verify command"""
    parser = subparsers.add_parser(
        "verify",
        help="Check every bound against an exactly solvable model",
        description="Exit status 2 when any bound fails to dominate the model's virial coefficients.",
    )
    parser.add_argument("--model", choices=MODEL_NAMES, default="tonks", help="Model (default tonks)")
    parser.add_argument("--sigma", type=rational, default=rational("1"), help="Rod length / sphere diameter (default 1)")
    parser.add_argument("--order", type=positive_int, default=10, help="Highest virial order (default 10)")
    parser.add_argument("--C", type=float, default=None, help="Override C(beta)")
    parser.add_argument("--R", type=float, default=None, help="Override R(beta)")
    parser.add_argument("--B", type=float, default=None, help="Override the stability constant")
    parser.add_argument("--oracle", action="store_true", help="Also compare b_n with the brute-force Mayer oracle")
    parser.add_argument("--seed", type=int, default=None, help="Monte Carlo seed (default VIRIAL_SEED)")
    parser.add_argument("--workers", type=positive_int, default=1, help="Threads for the Monte Carlo oracle")
    parser.add_argument(
        "--format",
        choices=[OutputFormat.TEXT.value, OutputFormat.JSON.value],
        default=OutputFormat.TEXT.value,
        help="Output format (default text)",
    )
    parser.set_defaults(handler=_verify)
