"""Database for storing verification run history."""
import sqlite3
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional


def _unsigned_seed(row: Dict) -> Dict:
    if row.get('seed') is not None and row['seed'] < 0:
        row['seed'] += 1 << 64
    return row


class Database:
    """SQLite database for `verify` suite runs."""

    def __init__(self, db_path: Path):
        """
        Initialize database connection.

        Args:
            db_path: Path to SQLite database file
        """
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self._init_database()

    def _init_database(self):
        """Create database tables if they don't exist."""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()

        cursor.execute('''
            CREATE TABLE IF NOT EXISTS verify_history (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                suite TEXT NOT NULL,
                seed INTEGER NOT NULL,
                started_at TEXT NOT NULL,
                completed_at TEXT,
                status TEXT NOT NULL,
                checks_total INTEGER DEFAULT 0,
                checks_failed INTEGER DEFAULT 0,
                error_message TEXT
            )
        ''')

        cursor.execute('''
            CREATE INDEX IF NOT EXISTS idx_verify_suite
            ON verify_history(suite)
        ''')

        conn.commit()
        conn.close()

    def start_run(self, suite: str, seed: int) -> int:
        """Start a new suite run. Returns run ID."""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()

        # sqlite integers are signed 64-bit
        stored_seed = seed - (1 << 64) if seed >= (1 << 63) else seed
        cursor.execute('''
            INSERT INTO verify_history (suite, seed, started_at, status)
            VALUES (?, ?, ?, ?)
        ''', (suite, stored_seed, datetime.now().isoformat(), 'running'))

        run_id = cursor.lastrowid
        conn.commit()
        conn.close()

        return run_id

    def complete_run(
        self,
        run_id: int,
        status: str,
        checks_total: int = 0,
        checks_failed: int = 0,
        error_message: Optional[str] = None
    ):
        """Complete a suite run ('passed', 'failed' or 'error')."""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()

        cursor.execute('''
            UPDATE verify_history
            SET completed_at = ?,
                status = ?,
                checks_total = ?,
                checks_failed = ?,
                error_message = ?
            WHERE id = ?
        ''', (
            datetime.now().isoformat(),
            status,
            checks_total,
            checks_failed,
            error_message,
            run_id
        ))

        conn.commit()
        conn.close()

    def get_history(self, limit: int = 10, suite: Optional[str] = None) -> List[Dict]:
        """Get recent runs, newest first."""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        cursor = conn.cursor()

        if suite:
            cursor.execute('''
                SELECT * FROM verify_history
                WHERE suite = ?
                ORDER BY id DESC
                LIMIT ?
            ''', (suite, limit))
        else:
            cursor.execute('''
                SELECT * FROM verify_history
                ORDER BY id DESC
                LIMIT ?
            ''', (limit,))

        rows = cursor.fetchall()
        conn.close()

        return [_unsigned_seed(dict(row)) for row in rows]

    def get_last_passed(self, suite: str) -> Optional[Dict]:
        """Get the last passing run of a suite."""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        cursor = conn.cursor()

        cursor.execute('''
            SELECT * FROM verify_history
            WHERE suite = ? AND status = 'passed'
            ORDER BY id DESC
            LIMIT 1
        ''', (suite,))

        row = cursor.fetchone()
        conn.close()

        return _unsigned_seed(dict(row)) if row else None

    def clear_history(self) -> int:
        """Delete all runs. Returns number of deleted rows."""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()

        cursor.execute('DELETE FROM verify_history')

        deleted = cursor.rowcount
        conn.commit()
        conn.close()

        return deleted
