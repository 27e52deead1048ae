"""
Exact integer max-flow with a min-cut certificate, and orientations with
prescribed out-degrees built on top of it.
"""

import logging
from collections import defaultdict
from typing import Dict, Mapping, Optional, Set

import networkx as nx
from networkx.algorithms.flow import preflow_push

from properorient.exceptions import InvariantViolation
from properorient.models import CutCertificate, FlowNetwork, Graph, MaxFlowResult, Orientation

logger = logging.getLogger(__name__)


def _as_digraph(net: FlowNetwork) -> nx.DiGraph:
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(net.node_count))
    for u, v, capacity in net.arcs:
        if digraph.has_edge(u, v):
            digraph[u][v]["capacity"] += capacity
        else:
            digraph.add_edge(u, v, capacity=capacity)
    return digraph


def _residual_reachable(residual: nx.DiGraph, source: int) -> Set[int]:
    open_arcs = nx.subgraph_view(
        residual, filter_edge=lambda u, v: residual[u][v]["capacity"] - residual[u][v]["flow"] > 0
    )
    return nx.descendants(open_arcs, source) | {source}


def max_flow(net: FlowNetwork) -> MaxFlowResult:
    """
    Maximum source-sink flow with a minimum cut of equal capacity.

    Args:
        net: Network with non-negative integer capacities

    Returns:
        Flow value, per-arc flows aligned with ``net.arcs`` and the cut whose
        source side is everything reachable from the source in the residual network

    Raises:
        InvariantViolation: If the cut capacity differs from the flow value
    """
    residual = preflow_push(_as_digraph(net), net.source, net.sink)
    value = residual.graph["flow_value"]
    side = _residual_reachable(residual, net.source)
    cut_capacity = sum(c for u, v, c in net.arcs if u in side and v not in side)
    if cut_capacity != value:
        raise InvariantViolation("flownet.duality", f"flow {value} but cut capacity {cut_capacity}")

    remaining: Dict[tuple, int] = defaultdict(int)
    for u, v, _ in net.arcs:
        # zero-capacity arcs are absent from the residual network
        if (u, v) not in remaining and residual.has_edge(u, v):
            remaining[(u, v)] = max(residual[u][v]["flow"], 0)
    flows = []
    for u, v, capacity in net.arcs:
        amount = min(capacity, remaining[(u, v)])
        remaining[(u, v)] -= amount
        flows.append(amount)

    logger.debug(f"Max flow on {net.node_count} nodes / {len(net.arcs)} arcs: {value}")
    return MaxFlowResult(
        value=value,
        cut=CutCertificate(source_side=sorted(side), capacity=cut_capacity),
        flows=flows,
    )


def prescribed_outdegree_orientation(graph: Graph, target: Mapping[int, int]) -> Optional[Orientation]:
    """
    Orientation with out-degree exactly target[v] at every vertex.

    Edge nodes receive one unit from the source and pass it to the endpoint
    that becomes the tail; vertex v forwards at most target[v] units.

    Returns:
        The orientation, or None when the targets are not realizable

    Raises:
        ValueError: If some target lies outside 0..deg(v)
    """
    for v in graph.vertices():
        t = target.get(v, 0)
        if not 0 <= t <= graph.degree(v):
            raise ValueError(f"target {t} at vertex {v} outside 0..{graph.degree(v)}")
    if sum(target.get(v, 0) for v in graph.vertices()) != graph.m:
        return None
    if graph.m == 0:
        return Orientation(arcs=())

    m = graph.m
    sink = m + graph.n + 1
    arcs = []
    for eid, (u, v) in enumerate(graph.edges, start=1):
        arcs.append((0, eid, 1))
        arcs.append((eid, m + u, 1))
        arcs.append((eid, m + v, 1))
    for v in graph.vertices():
        arcs.append((m + v, sink, target.get(v, 0)))
    result = max_flow(FlowNetwork(node_count=sink + 1, arcs=arcs, source=0, sink=sink))
    if result.value < m:
        return None

    oriented = []
    for index, (u, v) in enumerate(graph.edges):
        to_u = result.flows[3 * index + 1]
        oriented.append((u, v) if to_u else (v, u))
    return Orientation(arcs=tuple(oriented))
