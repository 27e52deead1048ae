#!/usr/bin/env python3
"""
Acceptance driver.

Runs orient3 over seeded random tripartite graphs and the planar fixture
families, verifies every output, logs each run and reports the worst
out-degree against its bound.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

# Add parent directory to path for imports
sys.path.append(str(Path(__file__).parent.parent))

from properorient import orient3
from properorient.database import initialize_database, log_run
from properorient.exceptions import ProperOrientError
from properorient.generator import gen_random, planar_families
from properorient.graph import connected_components, verify_proper
from properorient.models import RandomTripartiteSpec, Rational, RunRecord

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

PROBABILITIES = ("1/10", "1/4", "1/2", "4/5")
# seeds tried per requested instance before giving up on connectivity
SEED_FACTOR = 20


def random_suite(count: int, max_part: int):
    """(name, graph, partition, extra bound) for the first count connected seeded random instances."""
    produced = 0
    for seed in range(count * SEED_FACTOR):
        if produced == count:
            return
        sizes = tuple(1 + (seed * 7 + offset * 5) % max_part for offset in range(3))
        p = Rational.parse(PROBABILITIES[seed % len(PROBABILITIES)])
        graph, partition = gen_random(RandomTripartiteSpec(sizes=sizes, p=p, seed=seed))
        if len(connected_components(graph)) != 1:
            logger.debug(f"seed {seed}: disconnected, skipped")
            continue
        produced += 1
        yield f"random-{sizes[0]}-{sizes[1]}-{sizes[2]}-{p}-seed{seed}", graph, partition, None
    if produced < count:
        logger.warning(f"only {produced} of {count} random instances were connected")


def planar_suite():
    for name, graph, partition in planar_families():
        outerplanar = name.startswith(("fan", "snake"))
        yield name, graph, partition, 9 if outerplanar else 10


def run_one(name, graph, partition, ceiling, db_path) -> bool:
    start_time = time.time()
    record = RunRecord(command="acceptance", source=name, n=graph.n, m=graph.m)
    try:
        orientation, trace = orient3.run(graph, partition)
        report = verify_proper(graph, orientation, bound=trace.bound)
        record.k, record.bound, record.max_outdeg = trace.k, trace.bound, report.max_outdeg
        record.success = bool(report.is_proper and report.within_bound)
        if ceiling is not None and report.max_outdeg > ceiling:
            record.success = False
            record.error_message = f"max out-degree {report.max_outdeg} above {ceiling}"
    except ProperOrientError as e:
        logger.error(f"{name}: {str(e)}")
        record.success = False
        record.error_message = str(e)
    record.execution_time_seconds = round(time.time() - start_time, 3)
    log_run(record, db_path)
    return record.success


def main(count: int, max_part: int, db_path: str = None) -> bool:
    """
    Run both suites.

    Returns:
        bool: True if every instance passed
    """
    start_time = time.time()
    initialize_database(db_path)
    failures = 0
    total = 0
    for name, graph, partition, ceiling in list(random_suite(count, max_part)) + list(planar_suite()):
        total += 1
        if not run_one(name, graph, partition, ceiling, db_path):
            failures += 1
    logger.info(f"Acceptance: {total - failures}/{total} passed in {time.time() - start_time:.1f}s")
    return failures == 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Run the orient3 acceptance suites")
    parser.add_argument("--count", type=int, default=200, help="number of random instances")
    parser.add_argument("--max-part", type=int, default=16, help="largest part size")
    parser.add_argument("--db", default=None, help="run log database (default from settings)")
    args = parser.parse_args()
    success = main(args.count, args.max_part, args.db)
    sys.exit(0 if success else 1)
