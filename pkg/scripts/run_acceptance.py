#!/usr/bin/env python3
"""Run every verification suite and print a summary.

Usage:
    python scripts/run_acceptance.py [--seed N] [--scale X] [--threads N]
"""
import argparse
import sys
import logging
from pathlib import Path

# Add repository root to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.cli import SUITES, run_suite
from src.config import get_config
from src.roof import RoofConfig
from src.storage import Database

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(message)s'
)
logger = logging.getLogger(__name__)


def run_acceptance(seed: int, scale: float, threads: int) -> bool:
    """
    Run all suites, record them in the history database and print a report.

    Returns:
        True when every suite passed
    """
    config = get_config()
    db = Database(config.db_path)
    roof = RoofConfig(seed=seed, threads=threads)

    print("\n" + "=" * 80)
    print("🔍 ACCEPTANCE RUN")
    print("=" * 80)
    print(f"   Seed:    {seed}")
    print(f"   Scale:   {scale:g}")
    print(f"   Threads: {threads}")

    summary = []
    for name in SUITES:
        last = db.get_last_passed(name)
        if last:
            logger.info(f"   last pass of {name}: {last['completed_at']} (seed {last['seed']})")
        run_id = db.start_run(name, seed)
        try:
            result = run_suite(name, seed, roof, scale=scale)
        except Exception as e:
            db.complete_run(run_id, 'error', error_message=str(e))
            logger.error(f"❌ {name} raised: {e}", exc_info=True)
            summary.append((name, False, 0, 0))
            continue
        status = 'passed' if result.passed else 'failed'
        db.complete_run(run_id, status, checks_total=len(result.checks), checks_failed=result.failed)
        summary.append((name, result.passed, len(result.checks), result.failed))

    print("\n" + "=" * 80)
    print("📊 Summary")
    print("-" * 80)
    for name, passed, total, failed in summary:
        icon = "✅" if passed else "❌"
        print(f"   {icon} {name:<20} {total - failed}/{total} checks")

    all_passed = all(passed for _, passed, _, _ in summary)
    print("=" * 80)
    print("✅ ALL SUITES PASSED" if all_passed else "❌ SOME SUITES FAILED")
    print("=" * 80 + "\n")
    return all_passed


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Run every verification suite')
    parser.add_argument('--seed', type=int, default=None, help='Root seed (default: QMONO_SEED)')
    parser.add_argument('--scale', type=float, default=1.0, help='Population size multiplier')
    parser.add_argument('--threads', type=int, default=None, help='Worker threads (default: QMONO_THREADS)')
    args = parser.parse_args()

    config = get_config()
    seed = args.seed if args.seed is not None else config.seed
    threads = args.threads if args.threads is not None else config.threads
    sys.exit(0 if run_acceptance(seed, args.scale, threads) else 1)
