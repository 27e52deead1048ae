"""
Maximum average degree, exactly.

``exact_mad`` finds a densest subgraph by a binary search over rational
density guesses, each answered by one min-cut. ``brute_force_mad`` is the
subset-enumeration oracle for small graphs.
"""

import logging
from fractions import Fraction
from typing import Optional, Tuple

from properorient.config import get_settings
from properorient.exceptions import CapExceededError
from properorient.flownet import max_flow
from properorient.graph import induced_edge_count
from properorient.hakimi import minimum_bounded_orientation
from properorient.models import DensityCertificate, FlowNetwork, Graph, Rational

logger = logging.getLogger(__name__)


def _denser_than(graph: Graph, p: int, q: int) -> Optional[Tuple[int, ...]]:
    """
    A vertex set S with q|E(G[S])| - p|S| > 0, or None if there is none.

    Edge nodes get q units from the source, forward them to both endpoints
    through uncuttable arcs, and each vertex drains p units into the sink.
    """
    m = graph.m
    sink = m + graph.n + 1
    uncuttable = q * m + 1
    arcs = []
    for eid, (u, v) in enumerate(graph.edges, start=1):
        arcs.append((0, eid, q))
        arcs.append((eid, m + u, uncuttable))
        arcs.append((eid, m + v, uncuttable))
    for v in graph.vertices():
        arcs.append((m + v, sink, p))
    result = max_flow(FlowNetwork(node_count=sink + 1, arcs=arcs, source=0, sink=sink))
    if q * m - result.value <= 0:
        return None
    return tuple(node - m for node in result.cut.source_side if m < node < sink)


def exact_mad(graph: Graph) -> Tuple[Rational, DensityCertificate]:
    """
    Exact maximum average degree with a densest-subgraph witness.

    Returns:
        Mad as a reduced rational and a vertex set attaining it
    """
    if graph.m == 0:
        witness = [1] if graph.n else []
        zero = Rational(num=0, den=1)
        return zero, DensityCertificate(vertices=witness, edge_count=0, mad=zero)

    n = graph.n
    best: Tuple[int, ...] = tuple(graph.vertices())
    lo = Fraction(graph.m, n)
    hi = Fraction(n - 1, 2)
    resolution = Fraction(1, n * n)
    cuts = 0
    while hi - lo >= resolution:
        mid = (lo + hi) / 2
        cuts += 1
        found = _denser_than(graph, mid.numerator, mid.denominator)
        if found is None:
            hi = mid
        else:
            best = found
            lo = Fraction(induced_edge_count(graph, found), len(found))

    edges = induced_edge_count(graph, best)
    mad = Rational.from_fraction(Fraction(2 * edges, len(best)))
    logger.debug(f"exact_mad: {mad} after {cuts} min-cut checks")
    return mad, DensityCertificate(vertices=list(best), edge_count=edges, mad=mad)


def brute_force_mad(graph: Graph, cap: Optional[int] = None) -> Rational:
    """
    Mad by enumerating every non-empty vertex subset.

    Raises:
        CapExceededError: If n exceeds the cap
    """
    cap = cap if cap is not None else get_settings().brute_force_mad_cap
    if graph.n > cap:
        raise CapExceededError("brute-force Mad", graph.n, cap)
    if graph.n == 0:
        return Rational(num=0, den=1)

    masks = [0] * graph.n
    for u, v in graph.edges:
        masks[u - 1] |= 1 << (v - 1)
        masks[v - 1] |= 1 << (u - 1)

    edges_in = [0] * (1 << graph.n)
    best = Fraction(0)
    for subset in range(1, 1 << graph.n):
        low = subset & -subset
        v = low.bit_length() - 1
        rest = subset ^ low
        edges_in[subset] = edges_in[rest] + (masks[v] & rest).bit_count()
        density = Fraction(2 * edges_in[subset], subset.bit_count())
        if density > best:
            best = density
    return Rational.from_fraction(best)


def ceil_half_mad(graph: Graph) -> int:
    """The smallest k with Mad <= 2k, via bounded orientations."""
    return minimum_bounded_orientation(graph)[0]
