"""
virial-bounds

Rigorous bounds on virial coefficients and on the radius of convergence of
the virial expansion, computed from cluster-expansion bounds via the Lambert
W-function, with the temperedness integrals of radial pair potentials and
end-to-end checks against exactly solvable models.
"""

import sys
from collections.abc import Sequence

from pydantic import ValidationError

from src.cli import run
from src.exceptions import VerificationFailure, VirialError
from src.utils.logger import get_logger

logger = get_logger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    """
    Entry point for the virial-bounds command.

    Exit status:
        0  success
        1  domain, argument, divergence or configuration error
        2  a bound failed verification
    """
    try:
        sys.stdout.write(run(argv))
        return 0
    except VerificationFailure as e:
        sys.stdout.write(e.output)
        print(e.message, file=sys.stderr)
        return e.exit_code
    except VirialError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: invalid input\n{e}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130


if __name__ == "__main__":
    sys.exit(main())
