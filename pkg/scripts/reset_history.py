#!/usr/bin/env python3
"""
Clear the verification history.
A backup copy of the database is written next to it first.
"""
import sqlite3
import sys
from datetime import datetime
from pathlib import Path

# Add repository root to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.config import get_config
from src.storage import Database


def reset_history():
    """Delete all recorded suite runs after a confirmation."""
    config = get_config()
    if not Path(config.db_path).exists():
        print('ℹ️  No history database found - nothing to reset.')
        return

    db = Database(config.db_path)
    entries = db.get_history(limit=1_000_000)
    if not entries:
        print('ℹ️  Nothing to reset - history is already empty.')
        return

    suites = sorted({e['suite'] for e in entries})
    print('📋 Current history:')
    print(f'   • Runs:   {len(entries)}')
    print(f'   • Suites: {", ".join(suites)}')
    print()

    # Confirm
    if '--yes' not in sys.argv:
        response = input('Clear the verification history? (yes/no): ').strip().lower()
        if response != 'yes':
            print('❌ Cancelled')
            return

    # Create backup first
    backup_file = f'{config.db_path}.backup_{datetime.now().strftime("%Y%m%d_%H%M%S")}'
    print(f'\n💾 Creating backup: {backup_file}')
    conn = sqlite3.connect(config.db_path)
    conn.execute(f"VACUUM INTO '{backup_file}'")
    conn.close()

    deleted = db.clear_history()
    print(f'✅ Deleted {deleted} runs')


if __name__ == '__main__':
    reset_history()
