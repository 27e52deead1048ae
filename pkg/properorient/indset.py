"""
Independent sets for the pipeline steps.

``mis_bipartite`` is polynomial (Konig duality on a maximum matching).
``lex_mwis`` is an exact branch-and-bound for lexicographic multi-tier
weights, applied per connected component of the candidate set.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from properorient.config import get_settings
from properorient.exceptions import CapExceededError, NotBipartiteError
from properorient.graph import connected_components, to_networkx
from properorient.models import Graph, IndSetResult, LexObjective

logger = logging.getLogger(__name__)


def mis_bipartite(graph: Graph, vertices: Iterable[int], top: Optional[Iterable[int]] = None) -> Tuple[int, ...]:
    """
    Maximum independent set of the bipartite subgraph induced by vertices.

    Args:
        graph: Host graph
        vertices: Vertex set whose induced subgraph is bipartite
        top: One side of the bipartition; computed by 2-coloring when omitted

    Returns:
        Sorted tuple of the independent set (complement of a minimum vertex cover)

    Raises:
        NotBipartiteError: If an induced edge stays inside one side
    """
    members = sorted(set(vertices))
    inside = set(members)
    sub = to_networkx(graph, members)
    if sub.number_of_edges() == 0:
        return tuple(members)

    if top is None:
        if not nx.is_bipartite(sub):
            raise NotBipartiteError("induced candidate subgraph has an odd cycle")
        top_nodes = {v for v, side in nx.bipartite.color(sub).items() if side == 0}
    else:
        top_nodes = set(top) & inside
        for u, v in sub.edges():
            if (u in top_nodes) == (v in top_nodes):
                raise NotBipartiteError(f"edge {u}-{v} lies inside one side")

    matching = nx.bipartite.hopcroft_karp_matching(sub, top_nodes=top_nodes)
    cover = nx.bipartite.to_vertex_cover(sub, matching, top_nodes=top_nodes)
    return tuple(v for v in members if v not in cover)


class _BranchAndBound:
    """
    Maximum-weight independent set on a small vertex list, as bitmasks.

    Vertices are branched in list order, include before exclude, and only a
    strictly better leaf replaces the incumbent; among optimal sets the one
    taking the lowest-index vertices first wins.
    """

    def __init__(self, graph: Graph, vertices: List[int], weights: Dict[int, int]):
        self.vertices = vertices
        position = {v: i for i, v in enumerate(vertices)}
        self.nbr = [0] * len(vertices)
        for i, v in enumerate(vertices):
            for u in graph.neighbors(v):
                if u in position:
                    self.nbr[i] |= 1 << position[u]
        self.w = [weights[v] for v in vertices]
        self.order = sorted(range(len(vertices)), key=lambda i: (-self.w[i], i))
        self.best_value = -1
        self.best_mask = 0
        self.nodes = 0

    def _bound(self, cand: int) -> int:
        # greedy clique cover: one vertex per clique, heaviest first
        total = 0
        rest = cand
        for i in self.order:
            bit = 1 << i
            if not rest & bit:
                continue
            rest &= ~bit
            common = rest & self.nbr[i]
            while common:
                low = common & -common
                rest &= ~low
                common &= self.nbr[low.bit_length() - 1]
            total += self.w[i]
            if not rest:
                break
        return total

    def _search(self, cand: int, value: int, chosen: int) -> None:
        self.nodes += 1
        if not cand:
            if value > self.best_value:
                self.best_value, self.best_mask = value, chosen
            return
        if value + self._bound(cand) <= self.best_value:
            return
        low = cand & -cand
        i = low.bit_length() - 1
        self._search(cand & ~low & ~self.nbr[i], value + self.w[i], chosen | low)
        if self.nbr[i] & cand:
            self._search(cand & ~low, value, chosen)

    def solve(self) -> List[int]:
        self._search((1 << len(self.vertices)) - 1, 0, 0)
        return [v for i, v in enumerate(self.vertices) if self.best_mask >> i & 1]


def _scalar_weights(candidates: Sequence[int], objective: LexObjective) -> Dict[int, int]:
    """Fold the tiers into one integer per vertex with a base no tier sum can overflow."""
    largest = max((value for tier in objective.tiers for value in tier.values()), default=0)
    base = len(candidates) * largest + 1
    weights = {}
    for v in candidates:
        scalar = 0
        for tier in objective.tiers:
            scalar = scalar * base + tier.get(v, 0)
        weights[v] = scalar
    return weights


def lex_mwis(
    graph: Graph,
    candidates: Iterable[int],
    objective: LexObjective,
    cap: Optional[int] = None,
) -> IndSetResult:
    """
    Independent set maximizing the objective tiers lexicographically.

    Each connected component of the candidate set is solved exactly. Among
    optimal sets the lexicographically smallest sorted vertex tuple of equal
    size is returned.

    Args:
        graph: Host graph
        candidates: Vertices allowed in the set
        objective: Tiers of non-negative weights
        cap: Largest component size to search; defaults to the configured cap

    Returns:
        IndSetResult with the chosen vertices and the value of each tier

    Raises:
        CapExceededError: If a component has more vertices than the cap
    """
    cap = cap if cap is not None else get_settings().mwis_component_cap
    members = sorted(set(candidates))
    weights = _scalar_weights(members, objective)
    chosen: List[int] = []
    for component in connected_components(graph, members):
        if len(component) > cap:
            raise CapExceededError("lex_mwis component", len(component), cap)
        solver = _BranchAndBound(graph, list(component), weights)
        chosen.extend(solver.solve())
        logger.debug(f"lex_mwis component of {len(component)}: {solver.nodes} search nodes")
    chosen.sort()
    return IndSetResult(vertices=chosen, tier_values=list(objective.value(chosen)))


def improving_swap(
    graph: Graph,
    candidates: Iterable[int],
    chosen: Iterable[int],
    objective: LexObjective,
) -> Optional[int]:
    """
    A candidate whose insertion, after dropping its chosen neighbors, improves the objective.

    Returns:
        The first such vertex in index order, or None when the set is exchange-optimal
    """
    current = set(chosen)
    baseline = objective.value(current)
    for v in sorted(set(candidates) - current):
        swapped = (current - set(graph.neighbors(v))) | {v}
        if objective.value(swapped) > baseline:
            return v
    return None
