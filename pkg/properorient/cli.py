#!/usr/bin/env python3
"""
Command-line front end.

Exit codes: 0 success, 1 infeasible or verification failure or invariant
violation, 2 input error (malformed file, bad partition, cap exceeded,
unknown command). Artifacts go to standard output, logs to standard error.
"""

import argparse
import concurrent.futures
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from properorient import density, exactchi, hakimi, orient3, xconstruct
from properorient.config import configure_logging
from properorient.database import initialize_database, log_run
from properorient.exceptions import (
    CapExceededError,
    ConstructionError,
    GraphFormatError,
    InvariantViolation,
    OrientationMismatchError,
    PartitionError,
)
from properorient.generator import gen_random
from properorient.graph import (
    parse_graph,
    parse_orientation,
    serialize_graph,
    serialize_orientation,
    verify_proper,
)
from properorient.models import ConstructParams, RandomTripartiteSpec, Rational, RunRecord

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

INPUT_ERRORS = (
    GraphFormatError,
    PartitionError,
    OrientationMismatchError,
    CapExceededError,
    ValidationError,
    ValueError,
    OSError,
)


def _read_graph(path: str):
    return parse_graph(Path(path).read_text())


def _emit(text: str, output: Optional[str] = None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_mad(args: argparse.Namespace) -> int:
    graph, _ = _read_graph(args.graph)
    mad, certificate = density.exact_mad(graph)
    k = density.ceil_half_mad(graph)
    _emit(f"mad = {mad}\nk = {k}\n")
    logger.info(f"Densest subgraph has {len(certificate.vertices)} vertices")
    return EXIT_OK


def cmd_hakimi(args: argparse.Namespace) -> int:
    graph, _ = _read_graph(args.graph)
    k = args.k if args.k is not None else density.ceil_half_mad(graph)
    result = hakimi.orient_bounded(graph, k)
    if not result.feasible:
        _emit("inf " + " ".join(str(v) for v in result.certificate.vertices) + "\n")
        logger.info(f"No orientation with out-degree <= {k}: {result.certificate.edge_count} edges "
                    f"on {len(result.certificate.vertices)} vertices")
        return EXIT_FAILED
    report = verify_proper(graph, result.orientation)
    if report.max_outdeg > k:
        logger.error(f"Bounded orientation has out-degree {report.max_outdeg} > {k}")
        return EXIT_FAILED
    _emit(serialize_orientation(graph, result.orientation))
    return EXIT_OK


def cmd_orient3(args: argparse.Namespace) -> int:
    graph, partition = _read_graph(args.graph)
    try:
        orientation, trace = orient3.run(graph, partition, cap=args.cap)
    except InvariantViolation as e:
        if args.trace:
            Path(args.trace).write_text(e.dump)
        raise
    if args.trace:
        Path(args.trace).write_text(trace.render())
    report = verify_proper(graph, orientation, bound=trace.bound)
    if not (report.is_proper and report.within_bound):
        logger.error(f"Orientation failed re-verification: {len(report.violations)} violations")
        return EXIT_FAILED
    _emit(serialize_orientation(graph, orientation))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    graph, _ = _read_graph(args.graph)
    orientation = parse_orientation(Path(args.orientation).read_text(), graph)
    report = verify_proper(graph, orientation, bound=args.bound)
    lines = [
        f"proper = {'true' if report.is_proper else 'false'}",
        f"max_outdeg = {report.max_outdeg}",
    ]
    if args.bound is not None:
        lines.append(f"bound = {args.bound} {'ok' if report.within_bound else 'exceeded'}")
    lines.extend(f"violation {u} {v} {report.outdeg[u - 1]}" for u, v in report.violations)
    _emit("\n".join(lines) + "\n")
    ok = report.is_proper and report.within_bound is not False
    return EXIT_OK if ok else EXIT_FAILED


def cmd_chi(args: argparse.Namespace) -> int:
    graph, _ = _read_graph(args.graph)
    result = exactchi.chi_orient_with_witness(graph, cap=args.cap, max_k=args.max_k)
    if result is None:
        _emit(f"chi_orient > {args.max_k}\n")
        return EXIT_FAILED
    value, witness = result
    report = verify_proper(graph, witness, bound=value)
    if not (report.is_proper and report.within_bound):
        logger.error("Exact witness failed re-verification")
        return EXIT_FAILED
    _emit(f"chi_orient = {value}\n" + serialize_orientation(graph, witness))
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    params = ConstructParams(k=args.k, r=args.r)
    graph, partition, _ = xconstruct.build_extremal(params)
    _emit(serialize_graph(graph, partition), args.output)
    return EXIT_OK


def cmd_construct_check(args: argparse.Namespace) -> int:
    counting = xconstruct.counting_check(args.k, args.r)
    lines = counting.lines()
    passed = True
    if not args.counting_only:
        params = ConstructParams(k=args.k, r=args.r)
        graph, _, layout = xconstruct.build_extremal(params)
        forms = xconstruct.count_closed_forms(params)
        sizes_match = graph.n == forms.vertices and graph.m == forms.total_edges
        lines.append(f"n={graph.n} m={graph.m} closed-forms {'match' if sizes_match else 'differ'}")
        report = xconstruct.verify_structure(graph, layout)
        lines.extend(report.lines())
        passed = report.passed and sizes_match
    _emit("\n".join(lines) + "\n")
    return EXIT_OK if passed else EXIT_FAILED


def cmd_gen_random(args: argparse.Namespace) -> int:
    spec = RandomTripartiteSpec(sizes=tuple(args.sizes), p=Rational.parse(args.p), seed=args.seed)
    graph, partition = gen_random(spec)
    _emit(serialize_graph(graph, partition), args.output)
    return EXIT_OK


def run_instance(path: str, cap: Optional[int] = None) -> RunRecord:
    """Run orient3 on one file and verify the result; never raises."""
    started = time.time()
    record = RunRecord(command="orient3", source=path)
    try:
        graph, partition = _read_graph(path)
        record.n, record.m = graph.n, graph.m
        orientation, trace = orient3.run(graph, partition, cap=cap)
        report = verify_proper(graph, orientation, bound=trace.bound)
        record.k, record.bound, record.max_outdeg = trace.k, trace.bound, report.max_outdeg
        record.success = bool(report.is_proper and report.within_bound)
        if not record.success:
            record.error_message = f"{len(report.violations)} violations"
    except InvariantViolation as e:
        record.success = False
        record.error_message = str(e)
    except INPUT_ERRORS as e:
        record.success = False
        record.error_message = f"input error: {str(e)}"
    record.execution_time_seconds = round(time.time() - started, 3)
    return record


def cmd_batch(args: argparse.Namespace) -> int:
    files: Sequence[str] = args.files
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as executor:
            records: List[RunRecord] = list(executor.map(run_instance, files, [args.cap] * len(files)))
    else:
        records = [run_instance(path, args.cap) for path in files]

    if not args.no_log:
        initialize_database(args.db)
    lines = []
    for record in records:
        if not args.no_log:
            log_run(record, args.db)
        status = "PASS" if record.success else "FAIL"
        lines.append(f"{record.source} k={record.k} bound={record.bound} maxout={record.max_outdeg} {status}")
        logger.info(f"{record.source}: {status} in {record.execution_time_seconds}s")
    _emit("\n".join(lines) + ("\n" if lines else ""))
    return EXIT_OK if all(record.success for record in records) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="properorient",
        description="Proper orientations of 3-partite graphs with maximum out-degree at most ceil(Mad/2)+7",
    )
    commands = parser.add_subparsers(dest="command", metavar="command")

    sub = commands.add_parser("mad", help="exact maximum average degree and k = ceil(Mad/2)")
    sub.add_argument("graph")
    sub.set_defaults(handler=cmd_mad)

    sub = commands.add_parser("hakimi", help="orientation with out-degree <= k, or a dense certificate")
    sub.add_argument("graph")
    sub.add_argument("--k", type=int, default=None, help="out-degree bound (default ceil(Mad/2))")
    sub.set_defaults(handler=cmd_hakimi)

    sub = commands.add_parser("orient3", help="proper orientation with out-degree <= k+7")
    sub.add_argument("graph")
    sub.add_argument("--trace", default=None, help="write the step trace to this file")
    sub.add_argument("--cap", type=int, default=None, help="component cap of the exact independent set search")
    sub.set_defaults(handler=cmd_orient3)

    sub = commands.add_parser("verify", help="check an orientation for properness")
    sub.add_argument("graph")
    sub.add_argument("orientation")
    sub.add_argument("--bound", type=int, default=None, help="also check max out-degree <= bound")
    sub.set_defaults(handler=cmd_verify)

    sub = commands.add_parser("chi", help="exact proper orientation number (small graphs)")
    sub.add_argument("graph")
    sub.add_argument("--cap", type=int, default=None, help="largest vertex count searched")
    sub.add_argument("--max-k", type=int, default=None, help="stop the sweep at this out-degree bound")
    sub.set_defaults(handler=cmd_chi)

    sub = commands.add_parser("construct", help="write the extremal construction for (k, r)")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("-o", "--output", default=None)
    sub.set_defaults(handler=cmd_construct)

    sub = commands.add_parser("construct-check", help="structural and counting checks of the construction")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--counting-only", action="store_true", help="skip building the graph")
    sub.set_defaults(handler=cmd_construct_check)

    sub = commands.add_parser("gen-random", help="seeded random tripartite graph")
    sub.add_argument("--sizes", type=int, nargs=3, required=True, metavar=("A", "B", "C"))
    sub.add_argument("--p", required=True, help="edge probability as NUM/DEN")
    sub.add_argument("--seed", type=int, required=True)
    sub.add_argument("-o", "--output", default=None)
    sub.set_defaults(handler=cmd_gen_random)

    sub = commands.add_parser("batch", help="run and verify orient3 over several files")
    sub.add_argument("files", nargs="+")
    sub.add_argument("--db", default=None, help="run log database (default from settings)")
    sub.add_argument("--no-log", action="store_true", help="do not write the run log")
    sub.add_argument("--jobs", type=int, default=1, help="worker processes")
    sub.add_argument("--cap", type=int, default=None)
    sub.set_defaults(handler=cmd_batch)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Dispatch one command.

    Returns:
        int: Process exit code
    """
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    if not getattr(args, "handler", None):
        parser.print_usage(sys.stderr)
        return EXIT_INPUT

    try:
        return args.handler(args)
    except InvariantViolation as e:
        logger.error(f"Invariant violation: {str(e)}")
        return EXIT_FAILED
    except ConstructionError as e:
        logger.error(f"Construction failed: {str(e)}")
        return EXIT_FAILED
    except INPUT_ERRORS as e:
        logger.error(f"Input error: {str(e)}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
