#!/usr/bin/env python3
"""
Run log initialization script.

Creates the runs table and its indexes in the configured SQLite file.
Run this once before `batch`, `scripts/run_acceptance.py` or the service
start writing runs; the service also creates it on startup.
"""

import argparse
import logging
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.append(str(Path(__file__).parent.parent))

from properorient.config import configure_logging, get_settings
from properorient.database import initialize_database, validate_database_schema

logger = logging.getLogger(__name__)


def main(db_path: str = None) -> bool:
    """
    Create the run log at db_path (default from settings) and check its schema.

    Returns:
        bool: True if the schema is in place afterwards
    """
    target = db_path or get_settings().database_path
    logger.info(f"Initializing run log at {target}")

    if validate_database_schema(target):
        logger.info("Run log already present")
        return True

    if not initialize_database(target):
        return False

    if not validate_database_schema(target):
        logger.error("Run log schema still missing after initialization")
        return False

    logger.info("Run log ready")
    return True


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Create the properorient run log")
    parser.add_argument("--db", default=None, help="database file (default from settings)")
    configure_logging()
    success = main(parser.parse_args().db)
    print("Run log ready." if success else "Run log initialization failed. Check logs for details.")
    sys.exit(0 if success else 1)
