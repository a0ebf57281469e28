"""
Command-line entry point for the SFP option pricer.

    python main.py convergence --preset bsm-para1 --out errors.csv
    python main.py price --config heston.yaml -v

Exit codes: 0 success, 2 bad configuration, 3 reference unavailable,
4 numerical failure.
"""
import argparse
import logging
import os
import sys

import numpy as np

# Add project root to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import settings
from src.cli.commands import COMMANDS
from src.cli.run_config import REFERENCE_METHODS, resolve_config
from src.core.exceptions import (
    ConfigError, DegreeError, IntervalError, ParameterDomainError,
    PricingError, ReferenceUnavailableError, SolverError, UnsupportedOperationError,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_REFERENCE = 3
EXIT_NUMERICAL = 4

logger = logging.getLogger("sfp_pricer")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML run configuration")
    common.add_argument("--preset", choices=sorted(settings.PRESETS), help="named parameter set")
    common.add_argument("--out", help="CSV output path (default: stdout)")
    common.add_argument("--terms", help="comma-separated U values, overrides method.U")
    common.add_argument("--reference", choices=REFERENCE_METHODS, help="reference method")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")

    parser = argparse.ArgumentParser(
        prog="sfp-pricer",
        description="European option pricing by singular Fourier-Pade resummation",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("price", parents=[common], help="price one contract with Greeks")
    sub.add_parser("curve", parents=[common], help="price along a strike or spot range")
    sub.add_parser("convergence", parents=[common], help="error norms against a reference per U")
    sub.add_parser("greeks", parents=[common], help="value, delta, gamma (and vega) along a range")
    sub.add_parser("detect-jumps", parents=[common], help="locate density discontinuities")
    sub.add_parser("density", parents=[common], help="reconstructed log-return density")
    return parser


def configure_logging(verbosity: int) -> None:
    level = settings.LOG_LEVEL
    if verbosity == 1:
        level = "INFO"
    elif verbosity >= 2:
        level = "DEBUG"
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    try:
        cfg = resolve_config(
            config_path=args.config,
            preset=args.preset,
            terms=args.terms,
            out=args.out,
            reference=args.reference,
        )
        COMMANDS[args.command](cfg)
    except (ConfigError, ParameterDomainError) as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG
    except ReferenceUnavailableError as e:
        logger.error("Reference unavailable: %s", e)
        return EXIT_REFERENCE
    except (SolverError, IntervalError, DegreeError, UnsupportedOperationError) as e:
        logger.error("Numerical failure: %s", e)
        return EXIT_NUMERICAL
    except PricingError as e:
        logger.error("Pricing failed: %s", e)
        return EXIT_NUMERICAL
    except OSError as e:
        logger.error("Output error: %s", e)
        return EXIT_CONFIG
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as e:
        logger.error("Numerical failure: %s", e)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
