"""
Semi-matchings with vertex capacities (Hall's condition with weights).
"""

import logging
from typing import Union

from properorient.exceptions import InvariantViolation
from properorient.flownet import max_flow
from properorient.models import BipartiteInstance, FlowNetwork, HallCertificate, SemiMatching

logger = logging.getLogger(__name__)


def solve(instance: BipartiteInstance) -> Union[SemiMatching, HallCertificate]:
    """
    Give every U vertex one partner in V, using v at most w(v) times.

    A capacity of 0 means v takes no partner at all.

    Returns:
        SemiMatching saturating U, or HallCertificate with a set S of U
        vertices whose neighborhood has total capacity below |S|
    """
    if not instance.u:
        return SemiMatching(edges=[])

    u_index = {u: i for i, u in enumerate(instance.u, start=1)}
    offset = len(instance.u)
    v_index = {v: offset + i for i, v in enumerate(instance.v, start=1)}
    sink = offset + len(instance.v) + 1
    # the middle arcs must never be saturated so the residual cut stays a Hall set
    wide = len(instance.u) + 1

    pairs = sorted(set(instance.edges))
    arcs = [(0, u_index[u], 1) for u in instance.u]
    arcs.extend((u_index[u], v_index[v], wide) for u, v in pairs)
    arcs.extend((v_index[v], sink, instance.w.get(v, 0)) for v in instance.v)
    result = max_flow(FlowNetwork(node_count=sink + 1, arcs=arcs, source=0, sink=sink))

    if result.value == len(instance.u):
        first = len(instance.u)
        chosen = [pair for pair, flow in zip(pairs, result.flows[first:first + len(pairs)]) if flow > 0]
        return SemiMatching(edges=chosen)

    side = set(result.cut.source_side)
    subset = sorted(u for u in instance.u if u_index[u] in side)
    members = set(subset)
    neighborhood = sorted({v for u, v in pairs if u in members})
    weight = sum(instance.w.get(v, 0) for v in neighborhood)
    if len(subset) <= weight:
        raise InvariantViolation("hallmatch.certificate", f"|S|={len(subset)} but w(N(S))={weight}")
    logger.debug(f"Hall condition fails: |S|={len(subset)} > w(N(S))={weight}")
    return HallCertificate(subset=subset, neighborhood=neighborhood, neighborhood_weight=weight)
