"""Main entry point for the qmono entanglement monogamy toolkit."""
import sys
import argparse
import logging
from pathlib import Path
from typing import List, Optional, TextIO

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.config import get_config
from src.cli import (
    EXIT_NUMERIC,
    EXIT_USAGE,
    SUITES,
    USAGE_ERRORS,
    cmd_exponent,
    cmd_gen,
    cmd_history,
    cmd_measure,
    cmd_monogamy,
    cmd_roof,
    cmd_verify,
    parse_complex_list,
    parse_dims,
    resolve_run_config,
)
from src.errors import QmonoError
from src.roof import MODES


def setup_logging(level: str = 'INFO', log_file: Optional[str] = None):
    """Setup logging configuration."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for all subcommands."""
    parser = argparse.ArgumentParser(description='Entanglement measures, convex roofs and monogamy checks')
    parser.add_argument('--log-level', default=None, help='Logging level (default: LOG_LEVEL or INFO)')

    # options every subcommand understands
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='JSON file with RunConfig overrides')
    common.add_argument('--output', choices=['json', 'csv'], help='Report format (default: json)')
    common.add_argument('--seed', type=int, help='Root seed for all random draws')
    common.add_argument('--threads', type=int, help='Worker threads for restarts and scans')
    common.add_argument('--tolerance', type=float, help='Tolerance for the disentangling condition')
    common.add_argument('--restarts', type=int, help='Roof optimizer restarts')
    common.add_argument('--ensemble-size', type=int, help='Roof ensemble size m (default: rank^2)')
    common.add_argument('--max-iterations', type=int, help='Roof optimizer sweep limit')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # measure command
    measure_parser = subparsers.add_parser('measure', parents=[common], help='Evaluate measures on a state file')
    measure_parser.add_argument('--state', required=True, help='StateFile path')
    measure_parser.add_argument('--cut', help='Bipartition such as "0|1,2" (two-factor states default to 0|1)')
    measure_parser.add_argument('--measure', action='append', required=True,
                                help='Measure name, repeatable (concurrence, tangle, renyi:2, ...)')

    # roof command
    roof_parser = subparsers.add_parser('roof', parents=[common], help='Convex roof minimum or maximum of a measure')
    roof_parser.add_argument('--state', required=True, help='StateFile path')
    roof_parser.add_argument('--cut', help='Bipartition such as "0|1,2"')
    roof_parser.add_argument('--measure', default='concurrence', help='Measure name (default: concurrence)')
    roof_parser.add_argument('--mode', choices=list(MODES), default='min', help='min: formation, max: assistance')

    # monogamy command
    monogamy_parser = subparsers.add_parser('monogamy', parents=[common], help='Disentangling check on a three-party state')
    monogamy_parser.add_argument('--state', required=True, help='StateFile path with three subsystems')
    monogamy_parser.add_argument('--measure', default='concurrence', help='Measure family (default: concurrence)')
    monogamy_parser.add_argument('--alpha', type=float, help='Also report the power-alpha monogamy deficit')

    # exponent command
    exponent_parser = subparsers.add_parser('exponent', parents=[common], help='Empirical monogamy exponent over random states')
    exponent_parser.add_argument('--dims', type=parse_dims, default=(2, 2, 2), help='Local dimensions (default: 2,2,2)')
    exponent_parser.add_argument('--measure', default='concurrence', help='Measure family (default: concurrence)')
    exponent_parser.add_argument('--samples', type=int, help='Number of Haar random states')
    exponent_parser.add_argument('--no-special', action='store_true', help='Skip W, GHZ, product and biseparable states')
    exponent_parser.add_argument('--out', help='Write the maximizing state to this StateFile')
    exponent_parser.add_argument('--progress', action='store_true', help='Show a progress bar')

    # gen command
    gen_parser = subparsers.add_parser('gen', help='Generate a state file')
    gen_subparsers = gen_parser.add_subparsers(dest='generator', help='Generators')

    wclass_parser = gen_subparsers.add_parser('wclass', parents=[common], help='W-class three-qubit state')
    wclass_parser.add_argument('--lambdas', type=parse_complex_list,
                               help='Amplitudes of |100>, |010>, |001>, |000> (default: W state)')

    ghz_parser = gen_subparsers.add_parser('ghz', parents=[common], help='GHZ state')
    ghz_parser.add_argument('--dims', type=parse_dims, help='Local dimensions (default: 2,2,2)')

    markov_parser = gen_subparsers.add_parser('markov', parents=[common], help='Random quantum Markov state')
    markov_parser.add_argument('--blocks', type=int, default=2, help='Number of blocks (default: 2)')
    markov_parser.add_argument('--factor-dims', type=parse_dims,
                               help='d_A, d_BL, d_BR, d_C (default: 2,2,2,2)')
    markov_parser.add_argument('--mixed-blocks', action='store_true', help='Draw mixed block states')

    gmono_parser = gen_subparsers.add_parser('gmono', parents=[common],
                                             help='State whose formation and assistance roofs agree')
    gmono_parser.add_argument('--d', type=int, default=2, help='Local dimension (default: 2)')
    gmono_parser.add_argument('--r', type=int, default=2, help='Rank (default: 2)')

    random_parser = gen_subparsers.add_parser('random', parents=[common], help='Haar pure or Hilbert-Schmidt mixed state')
    random_parser.add_argument('--kind', choices=['haar_pure', 'hs_density'], default='haar_pure')
    random_parser.add_argument('--dims', type=parse_dims, help='Local dimensions (default: 2,2)')
    random_parser.add_argument('--rank', type=int, help='Rank for hs_density (default: full)')

    for p in (wclass_parser, ghz_parser, markov_parser, gmono_parser, random_parser):
        p.add_argument('--out', required=True, help='StateFile to write')

    # verify command
    verify_parser = subparsers.add_parser('verify', parents=[common], help='Run a verification suite')
    verify_parser.add_argument('suite', choices=list(SUITES) + ['all'], help='Suite name')
    verify_parser.add_argument('--scale', type=float, default=1.0, help='Population size multiplier (default: 1)')
    verify_parser.add_argument('--progress', action='store_true', help='Show progress bars')

    # history command
    history_parser = subparsers.add_parser('history', parents=[common], help='Show recent verification runs')
    history_parser.add_argument('--limit', type=int, default=20, help='Number of runs (default: 20)')
    history_parser.add_argument('--suite', help='Only runs of this suite')
    history_parser.add_argument('--clear', action='store_true', help='Clear the history')
    history_parser.add_argument('--confirm', action='store_true', help='Confirm clear action')

    return parser


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    Run one CLI command.

    Returns:
        0 on success, 1 when a verification suite fails, 2 on usage, parse,
        config or invariant errors, 3 on numeric failures
    """
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if not args.command or (args.command == 'gen' and not args.generator):
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    # Load configuration
    try:
        config = get_config()
        setup_logging(args.log_level or config.log_level, config.log_file)
        logger = logging.getLogger(__name__)
        run_cfg = resolve_run_config(args, config)
    except QmonoError as e:
        print(f"❌ Error loading configuration: {e}", file=sys.stderr)
        return EXIT_USAGE

    # Execute command
    try:
        if args.command == 'measure':
            return cmd_measure(args, run_cfg, out)

        elif args.command == 'roof':
            return cmd_roof(args, run_cfg, out)

        elif args.command == 'monogamy':
            return cmd_monogamy(args, run_cfg, out)

        elif args.command == 'exponent':
            return cmd_exponent(args, run_cfg, out)

        elif args.command == 'gen':
            return cmd_gen(args, run_cfg, out)

        elif args.command == 'verify':
            return cmd_verify(args, run_cfg, out, config)

        elif args.command == 'history':
            return cmd_history(args, run_cfg, out, config)

    except KeyboardInterrupt:
        logger.info("⚠️  Interrupted by user")
        return EXIT_NUMERIC
    except USAGE_ERRORS as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except QmonoError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_NUMERIC
    except Exception as e:
        logger.error(f"❌ Error: {e}", exc_info=True)
        return EXIT_NUMERIC
    return EXIT_USAGE


def main():
    """Main application entry point."""
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
