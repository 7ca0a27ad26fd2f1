import argparse
from typing import Any

from src.bounds import (
    BoundParams,
    BoundResult,
    CorollaryInput,
    classic_lp_bound,
    general_bound,
    improved_lp_bound,
    maximize_rho_lower,
    mp_asymptotic_base,
    mp_F,
    mp_free_energy_coeff_bound,
    mp_virial_coeff_bound,
    pu_bound,
)
from src.commands.common import positive_int, potential_from_file
from src.formatters import format_json
from src.potentials import BallConvention, compute_C, compute_R
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _result_document(result: BoundResult, beta: float, nmax: int | None) -> dict[str, Any]:
    document = result.model_dump(mode="json")
    if nmax is not None:
        document["virial_coeff_bounds"] = [result.coeff_bound(n, beta) for n in range(1, nmax + 1)]
    return document


def _corollary_input(args: argparse.Namespace) -> CorollaryInput:
    """Temperedness data from flags, or from a potential document when one is given."""
    C, R, B = args.C, getattr(args, "R", None), args.B
    if args.potential is not None:
        pot = potential_from_file(args.potential)
        convention = BallConvention(getattr(args, "B_convention", BallConvention.VOLUME))
        C = compute_C(pot, args.beta).value if C is None else C
        if hasattr(args, "R"):
            R = compute_R(pot, args.beta, convention).value if R is None else R
        B = pot.stability_B if B is None else B
    return CorollaryInput(beta=args.beta, B=0.0 if B is None else B, C_beta=C, R_beta=R)


# ============================================================================
# GENERAL
# ============================================================================


def _general(args: argparse.Namespace) -> str:
    params = BoundParams(a=args.a, b=args.b, beta=args.beta)
    result = general_bound(params)
    document = _result_document(result, args.beta, args.nmax)
    if args.check:
        s_star, value = maximize_rho_lower(params)
        document["numeric"] = {"s_star": s_star, "rho_lower": value}
    return format_json(document)


# ============================================================================
# COROLLARIES
# ============================================================================


def _lp(args: argparse.Namespace) -> str:
    inp = _corollary_input(args)
    return format_json(_result_document(improved_lp_bound(inp), inp.beta, args.nmax))


def _lp_classic(args: argparse.Namespace) -> str:
    inp = _corollary_input(args)
    return format_json(_result_document(classic_lp_bound(inp), inp.beta, args.nmax))


def _pu(args: argparse.Namespace) -> str:
    inp = _corollary_input(args)
    return format_json(_result_document(pu_bound(inp), inp.beta, args.nmax))


# ============================================================================
# MORAIS-PROCACCI
# ============================================================================


def _mp_F(args: argparse.Namespace) -> str:
    optimum = mp_F(args.u)
    return format_json({"u": args.u, "alpha_star": optimum.alpha_star, "F": optimum.F})


def _mp(args: argparse.Namespace) -> str:
    inp = _corollary_input(args)
    optimum = mp_F(inp.u)
    document = {
        "u": inp.u,
        "alpha_star": optimum.alpha_star,
        "F": optimum.F,
        "asymptotic_base": mp_asymptotic_base(inp),
        "free_energy_coeff_bounds": [
            mp_free_energy_coeff_bound(k, inp, optimum.alpha_star) for k in range(1, args.kmax + 1)
        ],
        "virial_coeff_bounds": [mp_virial_coeff_bound(n, inp) for n in range(1, args.kmax + 1)],
    }
    return format_json(document)


def _add_temperedness_flags(parser: argparse.ArgumentParser, with_R: bool, with_C: bool) -> None:
    parser.add_argument("--beta", type=float, required=True, help="Inverse temperature")
    parser.add_argument("--B", type=float, default=None, help="Stability constant (default 0, or the potential's)")
    if with_C:
        parser.add_argument("--C", type=float, default=None, help="Temperedness integral C(beta)")
    else:
        parser.set_defaults(C=None)
    if with_R:
        parser.add_argument("--R", type=float, default=None, help="Integral R(beta)")
        parser.add_argument(
            "--B-convention",
            dest="B_convention",
            choices=[c.value for c in BallConvention],
            default=BallConvention.VOLUME.value,
            help="Read |B| in R(beta) as unit-ball volume (default) or unit-sphere area",
        )
    parser.add_argument("--potential", default=None, help="JSON potential; computes C/R and B when not given")
    parser.add_argument("--nmax", type=positive_int, default=None, help="Also list |c_n| bounds for n = 1..nmax")


def register_bound_commands(subparsers: argparse._SubParsersAction) -> None:
    """Register the bound command family"""
    bound = subparsers.add_parser("bound", help="Closed-form virial bounds", description="Evaluate one bound and print it as JSON.")
    kinds = bound.add_subparsers(dest="kind", required=True, metavar="KIND")

    general = kinds.add_parser("general", help="General bound from a cluster bound (a, b)")
    general.add_argument("--a", type=float, required=True, help="Prefactor a (inverse volume)")
    general.add_argument("--b", type=float, required=True, help="Scale b (volume)")
    general.add_argument("--beta", type=float, default=1.0, help="Inverse temperature (default 1)")
    general.add_argument("--nmax", type=positive_int, default=None, help="Also list |c_n| bounds for n = 1..nmax")
    general.add_argument("--check", action="store_true", help="Confirm the radius by numeric maximisation")
    general.set_defaults(handler=_general)

    lp = kinds.add_parser("lp", help="Improved Lebowitz-Penrose bound from C(beta)")
    _add_temperedness_flags(lp, with_R=False, with_C=True)
    lp.set_defaults(handler=_lp)

    lp_classic = kinds.add_parser("lp-classic", help="Classic Lebowitz-Penrose bound from C(beta)")
    _add_temperedness_flags(lp_classic, with_R=False, with_C=True)
    lp_classic.set_defaults(handler=_lp_classic)

    pu = kinds.add_parser("pu", help="Poghosyan-Ueltschi bound from R(beta)")
    _add_temperedness_flags(pu, with_R=True, with_C=False)
    pu.set_defaults(handler=_pu)

    mp_f = kinds.add_parser("mp-F", help="Morais-Procacci optimum F(u)")
    mp_f.add_argument("--u", type=float, required=True, help="u = e^(2 beta B) >= 1")
    mp_f.set_defaults(handler=_mp_F)

    mp = kinds.add_parser("mp", help="Morais-Procacci free-energy and asymptotic bounds")
    _add_temperedness_flags(mp, with_R=False, with_C=True)
    mp.add_argument("--kmax", type=positive_int, default=5, help="Highest coefficient index (default 5)")
    mp.set_defaults(handler=_mp)
