"""
Runtime settings and logging setup.

Settings are read once per process. Every field can be overridden from the
environment with ``PROPORIENT_<FIELD_NAME_UPPER>``.
"""

import logging
import os
import sys
from functools import lru_cache

from pydantic import BaseModel, Field

ENV_PREFIX = "PROPORIENT_"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseModel):
    """Tunable limits and paths."""
    database_path: str = Field("orient_runs.db", description="SQLite file holding the run log")
    tripartition_cap: int = Field(25, ge=1, description="Largest n accepted by the coloring backtracker")
    brute_force_mad_cap: int = Field(16, ge=1, description="Largest n accepted by subset enumeration of Mad")
    mwis_component_cap: int = Field(64, ge=1, description="Largest candidate component solved by lex_mwis")
    exactchi_vertex_cap: int = Field(14, ge=1, description="Largest n accepted by the exact proper orientation search")
    construct_max_vertices: int = Field(200000, ge=1, description="Refuse to build extremal graphs larger than this")
    flow_edge_budget: int = Field(250000, ge=1, description="Largest edge count for the full-graph orientation check")
    log_level: str = Field("INFO", description="Root log level for entry points")


def _environment_overrides() -> dict:
    overrides = {}
    for name in Settings.model_fields:
        value = os.environ.get(ENV_PREFIX + name.upper())
        if value is not None:
            overrides[name] = value
    return overrides


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Build the process-wide settings.

    Returns:
        Settings with environment overrides applied

    Raises:
        pydantic.ValidationError: If an override does not validate
    """
    return Settings(**_environment_overrides())


def configure_logging(level: str = None) -> None:
    """Send log records to standard error so standard output only carries artifacts."""
    logging.basicConfig(
        level=getattr(logging, (level or get_settings().log_level).upper(), logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
