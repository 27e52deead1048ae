"""
Exact proper orientation number for small graphs.

A labeling of the vertices with out-degree targets is searched by
backtracking; adjacent labels must differ. Each complete labeling with the
right total is handed to the prescribed out-degree flow to see whether an
orientation realizes it.
"""

import logging
from typing import Dict, Optional, Tuple

from properorient.config import get_settings
from properorient.exceptions import CapExceededError, InvariantViolation
from properorient.flownet import prescribed_outdegree_orientation
from properorient.hakimi import minimum_bounded_orientation
from properorient.models import Graph, Orientation

logger = logging.getLogger(__name__)


def exists_proper_bounded(graph: Graph, k: int, cap: Optional[int] = None) -> Optional[Orientation]:
    """
    A proper orientation with every out-degree at most k, if one exists.

    Args:
        graph: Small simple graph
        k: Out-degree bound; values above the maximum degree are clamped
        cap: Largest n searched; defaults to the configured cap

    Returns:
        A proper orientation, or None

    Raises:
        CapExceededError: If n exceeds the cap
        ValueError: If k is negative
    """
    cap = cap if cap is not None else get_settings().exactchi_vertex_cap
    if graph.n > cap:
        raise CapExceededError("exact proper orientation search", graph.n, cap)
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if graph.m == 0:
        return Orientation(arcs=())
    k = min(k, graph.max_degree())

    order = sorted(graph.vertices(), key=lambda v: (-graph.degree(v), v))
    ceiling = {v: min(k, graph.degree(v)) for v in order}
    room = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        room[i] = room[i + 1] + ceiling[order[i]]
    labels: Dict[int, int] = {}
    leaves = 0

    def supported(v: int) -> bool:
        # each edge at v leaves v or leaves a neighbor with a positive label
        possible = sum(1 for u in graph.neighbors(v) if labels.get(u, 1) >= 1)
        return labels[v] + possible >= graph.degree(v)

    def search(position: int, total: int) -> Optional[Orientation]:
        nonlocal leaves
        if total > graph.m or total + room[position] < graph.m:
            return None
        if position == len(order):
            leaves += 1
            return prescribed_outdegree_orientation(graph, labels)
        v = order[position]
        taken = {labels[u] for u in graph.neighbors(v) if u in labels}
        for label in range(ceiling[v] + 1):
            if label in taken:
                continue
            labels[v] = label
            if supported(v) and all(supported(u) for u in graph.neighbors(v) if u in labels):
                found = search(position + 1, total + label)
                if found is not None:
                    return found
            del labels[v]
        return None

    result = search(0, 0)
    logger.debug(f"exists_proper_bounded k={k}: {'found' if result else 'none'} after {leaves} flow checks")
    return result


def chi_orient_with_witness(
    graph: Graph, cap: Optional[int] = None, max_k: Optional[int] = None
) -> Optional[Tuple[int, Orientation]]:
    """
    The proper orientation number and a proper orientation attaining it.

    The search starts at ceil(Mad/2), below which no orientation of any kind
    fits, and ends at the maximum degree or at max_k, whichever is smaller.

    Args:
        graph: Small simple graph
        cap: Largest n searched; defaults to the configured cap
        max_k: Last k tried; None sweeps up to the maximum degree

    Returns:
        (value, witness), or None if max_k is below the proper orientation number

    Raises:
        CapExceededError: If n exceeds the cap
        ValueError: If max_k is negative
    """
    if max_k is not None and max_k < 0:
        raise ValueError(f"max_k must be non-negative, got {max_k}")
    if graph.m == 0:
        return 0, Orientation(arcs=())
    start, _ = minimum_bounded_orientation(graph)
    stop = graph.max_degree() if max_k is None else min(max_k, graph.max_degree())
    for k in range(start, stop + 1):
        found = exists_proper_bounded(graph, k, cap)
        if found is not None:
            return k, found
    if stop < graph.max_degree():
        logger.info(f"no proper orientation with out-degree <= {stop}")
        return None
    raise InvariantViolation("exactchi.max-degree", f"no proper orientation with out-degree <= {graph.max_degree()}")


def chi_orient(graph: Graph, cap: Optional[int] = None, max_k: Optional[int] = None) -> Optional[int]:
    result = chi_orient_with_witness(graph, cap, max_k)
    return result[0] if result is not None else None
