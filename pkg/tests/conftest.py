"""Shared fixtures: fixture-file access and a throwaway run log."""

from pathlib import Path

import pytest

from properorient.config import get_settings
from properorient.graph import parse_graph

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def load_graph(name: str):
    return parse_graph((FIXTURES / name).read_text())


@pytest.fixture
def db_path(tmp_path, monkeypatch):
    """Point the settings at a fresh SQLite file for the duration of a test."""
    path = tmp_path / "runs.db"
    monkeypatch.setenv("PROPORIENT_DATABASE_PATH", str(path))
    get_settings.cache_clear()
    yield path
    get_settings.cache_clear()
