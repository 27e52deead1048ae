"""
Orientations with bounded out-degree by incremental path reversal.

Edges are inserted one at a time. Whenever a tail overflows to k + 1
out-arcs, a directed path to a vertex with spare room is reversed; when no
such path exists, the vertices reachable from the overflowing tail span more
than k|S| edges and become the infeasibility certificate.
"""

import logging
from collections import deque
from typing import Dict, List, Optional, Set, Tuple

from properorient.graph import induced_edge_count
from properorient.models import BoundedOrientationResult, Graph, InfeasibilityCertificate, Orientation

logger = logging.getLogger(__name__)


class _ArcState:
    def __init__(self, graph: Graph):
        self.graph = graph
        self.out: List[Set[int]] = [set() for _ in range(graph.n + 1)]
        self.tail: Dict[Tuple[int, int], int] = {}

    def outdeg(self, v: int) -> int:
        return len(self.out[v])

    def add(self, tail: int, head: int) -> None:
        self.out[tail].add(head)
        self.tail[(min(tail, head), max(tail, head))] = tail

    def reverse(self, tail: int, head: int) -> None:
        self.out[tail].discard(head)
        self.add(head, tail)

    def relief_path(self, start: int, k: int) -> Tuple[Optional[List[int]], Set[int]]:
        """
        Shortest directed path from start to a vertex with out-degree below k.

        Out-neighbors are expanded lowest index first.

        Returns:
            (path, visited); path is None when no such vertex is reachable
        """
        parent = {start: start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in sorted(self.out[x]):
                if y in parent:
                    continue
                parent[y] = x
                if self.outdeg(y) < k:
                    path = [y]
                    while path[-1] != start:
                        path.append(parent[path[-1]])
                    return path[::-1], set(parent)
                queue.append(y)
        return None, set(parent)

    def orientation(self) -> Orientation:
        arcs = []
        for u, v in self.graph.edges:
            tail = self.tail[(u, v)]
            arcs.append((tail, v if tail == u else u))
        return Orientation(arcs=tuple(arcs))


def orient_bounded(graph: Graph, k: int) -> BoundedOrientationResult:
    """
    Orientation with every out-degree at most k, or a certificate that none exists.

    Args:
        graph: Any simple graph
        k: Out-degree bound

    Returns:
        BoundedOrientationResult carrying either the orientation or a set S
        with |E(G[S])| > k|S|

    Raises:
        ValueError: If k is negative
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    state = _ArcState(graph)
    for u, v in graph.edges:
        tail, head = (u, v) if state.outdeg(u) <= state.outdeg(v) else (v, u)
        state.add(tail, head)
        if state.outdeg(tail) <= k:
            continue
        path, visited = state.relief_path(tail, k)
        if path is None:
            vertices = sorted(visited)
            certificate = InfeasibilityCertificate(
                vertices=vertices,
                edge_count=induced_edge_count(graph, vertices),
                k=k,
            )
            logger.debug(f"orient_bounded k={k}: infeasible, certificate of {len(vertices)} vertices")
            return BoundedOrientationResult(k=k, certificate=certificate)
        for x, y in zip(path, path[1:]):
            state.reverse(x, y)

    return BoundedOrientationResult(k=k, orientation=state.orientation())


def minimum_bounded_orientation(graph: Graph) -> Tuple[int, Orientation]:
    """
    The smallest feasible k together with its orientation D0.

    k equals ceil(Mad/2): an orientation with out-degrees at most k exists
    exactly when every subgraph has at most k edges per vertex.
    """
    if graph.m == 0:
        return 0, Orientation(arcs=())
    lo, hi = 1, graph.max_degree()
    best = orient_bounded(graph, hi).orientation
    while lo < hi:
        mid = (lo + hi) // 2
        result = orient_bounded(graph, mid)
        if result.feasible:
            hi, best = mid, result.orientation
        else:
            lo = mid + 1
    logger.debug(f"minimum_bounded_orientation: k={hi}")
    return hi, best
