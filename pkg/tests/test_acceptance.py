import importlib.util
from pathlib import Path

import pytest

from properorient.graph import connected_components

SCRIPT = Path(__file__).parent.parent / "scripts" / "run_acceptance.py"


@pytest.fixture(scope="module")
def acceptance():
    spec = importlib.util.spec_from_file_location("run_acceptance", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def test_random_suite_keeps_connected_instances(acceptance):
    cases = list(acceptance.random_suite(12, 6))
    assert len(cases) == 12
    assert len({name for name, _, _, _ in cases}) == 12
    for name, graph, partition, ceiling in cases:
        assert len(connected_components(graph)) == 1, name
        assert partition.is_proper(graph)
        assert ceiling is None


def test_random_suite_skips_sparse_draws(acceptance):
    # three single-vertex parts are connected only with at least two of the three edges
    cases = list(acceptance.random_suite(4, 1))
    assert len(cases) <= 4
    for name, graph, _, _ in cases:
        assert name.startswith("random-1-1-1-")
        assert graph.m >= 2
