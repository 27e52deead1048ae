"""
Database connection and management utilities.

Keeps the run log: one row per orient3 or verification run, in an SQLite
file whose path comes from the settings unless a caller passes one.
"""

import logging
import sqlite3
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from properorient.config import get_settings
from properorient.models import RunRecord, RunStats

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

RUN_COLUMNS = (
    "command", "source", "n", "m", "k", "bound", "max_outdeg",
    "success", "error_message", "execution_time_seconds",
)


def _resolve(db_path: Optional[PathLike]) -> Path:
    return Path(db_path) if db_path is not None else Path(get_settings().database_path)


def get_db_connection(db_path: Optional[PathLike] = None) -> sqlite3.Connection:
    """
    Create and return a database connection.

    Returns:
        sqlite3.Connection: Database connection with row factory configured
    """
    try:
        conn = sqlite3.connect(_resolve(db_path))
        conn.row_factory = sqlite3.Row  # Enable column access by name
        return conn
    except sqlite3.Error as e:
        logger.error(f"Failed to connect to database: {e}")
        raise


@contextmanager
def get_db_cursor(db_path: Optional[PathLike] = None):
    """
    Context manager for database operations.

    Yields:
        sqlite3.Cursor: Database cursor for executing queries
    """
    conn = None
    try:
        conn = get_db_connection(db_path)
        cursor = conn.cursor()
        yield cursor
        conn.commit()
    except Exception as e:
        if conn:
            conn.rollback()
        logger.error(f"Database operation failed: {e}")
        raise
    finally:
        if conn:
            conn.close()


def initialize_database(db_path: Optional[PathLike] = None) -> bool:
    """
    Create the run log table and its indexes.

    Returns:
        bool: True if initialization successful, False otherwise
    """
    try:
        with get_db_cursor(db_path) as cursor:
            cursor.execute(
                """
                CREATE TABLE IF NOT EXISTS runs (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    timestamp DATETIME DEFAULT CURRENT_TIMESTAMP,
                    command TEXT NOT NULL,
                    source TEXT NOT NULL DEFAULT '',
                    n INTEGER NOT NULL DEFAULT 0,
                    m INTEGER NOT NULL DEFAULT 0,
                    k INTEGER,
                    bound INTEGER,
                    max_outdeg INTEGER,
                    success BOOLEAN NOT NULL,
                    error_message TEXT,
                    execution_time_seconds REAL
                )
                """
            )
            cursor.execute("CREATE INDEX IF NOT EXISTS idx_runs_timestamp ON runs(timestamp DESC)")
            cursor.execute("CREATE INDEX IF NOT EXISTS idx_runs_success ON runs(success)")
        logger.info("Database initialized successfully")
        return True
    except Exception as e:
        logger.error(f"Database initialization failed: {e}")
        return False


def validate_database_schema(db_path: Optional[PathLike] = None) -> bool:
    """
    Validate that the runs table exists with every expected column.

    Returns:
        bool: True if schema is valid, False if initialization is needed
    """
    try:
        with get_db_cursor(db_path) as cursor:
            cursor.execute("PRAGMA table_info(runs)")
            columns = {row["name"] for row in cursor.fetchall()}
        missing = set(RUN_COLUMNS) - columns
        if missing:
            logger.warning(f"Missing run log columns: {sorted(missing)}")
            return False
        logger.info("Database schema validation successful")
        return True
    except Exception as e:
        logger.error(f"Schema validation failed: {e}")
        return False


def log_run(record: RunRecord, db_path: Optional[PathLike] = None) -> Optional[int]:
    """
    Append a run to the log.

    Failures are logged as warnings and never propagate to the computation.

    Returns:
        The new row id, or None if logging failed
    """
    try:
        values = record.model_dump(include=set(RUN_COLUMNS))
        with get_db_cursor(db_path) as cursor:
            cursor.execute(
                f"INSERT INTO runs ({', '.join(RUN_COLUMNS)}) VALUES ({', '.join('?' for _ in RUN_COLUMNS)})",
                tuple(values[column] for column in RUN_COLUMNS),
            )
            return cursor.lastrowid
    except Exception as e:
        logger.warning(f"Failed to log {record.command} run: {str(e)}")
        return None


def _row_to_record(row: sqlite3.Row) -> RunRecord:
    data: Dict[str, Any] = dict(row)
    data["success"] = bool(data["success"])
    data["timestamp"] = str(data["timestamp"]) if data["timestamp"] is not None else None
    return RunRecord(**data)


def get_runs(
    limit: int = 50,
    offset: int = 0,
    success: Optional[bool] = None,
    db_path: Optional[PathLike] = None,
) -> List[RunRecord]:
    """
    Most recent runs first.

    Args:
        limit: Maximum rows returned
        offset: Rows skipped
        success: Only successful (True) or failed (False) runs when given
    """
    query = "SELECT * FROM runs"
    params: List[Any] = []
    if success is not None:
        query += " WHERE success = ?"
        params.append(success)
    query += " ORDER BY id DESC LIMIT ? OFFSET ?"
    params.extend([limit, offset])
    with get_db_cursor(db_path) as cursor:
        cursor.execute(query, params)
        return [_row_to_record(row) for row in cursor.fetchall()]


def get_run_stats(db_path: Optional[PathLike] = None) -> RunStats:
    with get_db_cursor(db_path) as cursor:
        cursor.execute(
            """
            SELECT COUNT(*) AS total,
                   COALESCE(SUM(CASE WHEN success THEN 1 ELSE 0 END), 0) AS ok,
                   MAX(max_outdeg) AS worst,
                   AVG(execution_time_seconds) AS avg_time
            FROM runs
            """
        )
        row = cursor.fetchone()
    return RunStats(
        total_runs=row["total"],
        successful_runs=row["ok"],
        failed_runs=row["total"] - row["ok"],
        max_outdeg_seen=row["worst"],
        average_execution_time=row["avg_time"],
    )
