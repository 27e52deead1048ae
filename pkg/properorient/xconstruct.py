"""
The extremal r-partite construction whose proper orientation number exceeds
ceil(Mad/2) + r, with its structural and counting checks.

Copy s consists of
  A_s  k vertices,
  B_s  one block of k(k+r)+1 vertices per non-empty subset S of A_s, each
       joined to exactly S (subsets by size, colex within a size),
  C_s  (k+r+1)k^2 vertices joined to all of A_s, cut into blocks of k,
  D_s  one vertex per C block, joined to that block.
The first floor(2k/(r-1)) vertices of every A_s form U_s and all U_i, U_j
(i != j) are joined completely. A_s and D_s lie in part s, B_s and C_s in part
(s mod r) + 1.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

from properorient.config import get_settings
from properorient.exceptions import ConstructionError
from properorient.graph import induced_edge_count, induced_subgraph
from properorient.hakimi import orient_bounded
from properorient.models import (
    BBlock,
    ClosedForms,
    ConstructParams,
    CopyLayout,
    CountingReport,
    GadgetLayout,
    Graph,
    Partition,
    Rational,
    StructureCheck,
    StructureReport,
    closed_forms,
)

logger = logging.getLogger(__name__)


def count_closed_forms(params: ConstructParams) -> ClosedForms:
    """Vertex and edge counts predicted for build_extremal."""
    return closed_forms(params)


def _colex_subsets(a_vertices: List[int], size: int) -> List[Tuple[int, ...]]:
    return sorted(combinations(a_vertices, size), key=lambda subset: tuple(reversed(subset)))


def build_extremal(params: ConstructParams, max_vertices: Optional[int] = None) -> Tuple[Graph, Partition, GadgetLayout]:
    """
    Build the construction for (k, r).

    Args:
        params: k >= 1, r >= 3
        max_vertices: Refuse larger graphs; defaults to the configured limit

    Returns:
        The graph, its proper r-partition and the vertex layout

    Raises:
        ConstructionError: If the graph would exceed max_vertices
    """
    max_vertices = max_vertices if max_vertices is not None else get_settings().construct_max_vertices
    k, r = params.k, params.r
    total = r * params.copy_size
    if total > max_vertices:
        raise ConstructionError(f"construction for k={k}, r={r} has {total} vertices, limit is {max_vertices}")

    edges: List[Tuple[int, int]] = []
    parts = [0] * (total + 1)
    copies = []
    for s in range(1, r + 1):
        base = (s - 1) * params.copy_size + 1
        a = (base, base + k)
        b = (a[1], a[1] + params.b_size)
        c = (b[1], b[1] + params.c_size)
        d = (c[1], c[1] + params.d_size)
        a_vertices = list(range(*a))

        blocks = []
        cursor = b[0]
        for size in range(1, k + 1):
            for subset in _colex_subsets(a_vertices, size):
                block = BBlock(subset=list(subset), start=cursor, stop=cursor + params.b_block_size)
                for x in range(block.start, block.stop):
                    edges.extend((y, x) for y in subset)
                blocks.append(block)
                cursor = block.stop

        for x in range(*c):
            edges.extend((y, x) for y in a_vertices)
        for t, y in enumerate(range(*d)):
            start = c[0] + t * k
            edges.extend((x, y) for x in range(start, start + k))

        other = s % r + 1
        for v in range(a[0], a[1]):
            parts[v] = s
        for v in range(b[0], c[1]):
            parts[v] = other
        for v in range(*d):
            parts[v] = s
        copies.append(CopyLayout(index=s, a=a, b=b, c=c, d=d, b_blocks=blocks,
                                 u=a_vertices[:params.u_size]))

    for first, second in combinations(copies, 2):
        edges.extend((x, y) for x in first.u for y in second.u)

    graph = Graph(n=total, edges=edges)
    partition = Partition(r=r, parts=tuple(parts[1:]))
    if not partition.is_proper(graph):
        raise ConstructionError("construction partition is not proper")
    logger.info(f"Built extremal graph k={k} r={r}: n={graph.n} m={graph.m}")
    return graph, partition, GadgetLayout(params=params, copies=copies)


def _check_b_blocks(graph: Graph, layout: GadgetLayout) -> StructureCheck:
    count = 0
    for copy in layout.copies:
        for block in copy.b_blocks:
            expected = tuple(block.subset)
            for x in range(block.start, block.stop):
                if graph.neighbors(x) != expected:
                    return StructureCheck(
                        name="b-blocks", passed=False,
                        detail=f"copy {copy.index} block S={list(expected)} vertex {x} has neighbors {list(graph.neighbors(x))}",
                    )
            count += 1
    return StructureCheck(name="b-blocks", passed=True, detail=f"{count} blocks each joined to exactly its subset")


def _check_c_blocks(graph: Graph, layout: GadgetLayout) -> StructureCheck:
    k = layout.params.k
    for copy in layout.copies:
        c_start, c_stop = copy.c
        if (c_stop - c_start) != k * (copy.d[1] - copy.d[0]):
            return StructureCheck(name="c-blocks", passed=False,
                                  detail=f"copy {copy.index} C blocks do not partition C")
        for t, y in enumerate(copy.d_vertices()):
            block = tuple(range(c_start + t * k, c_start + (t + 1) * k))
            if graph.neighbors(y) != block:
                return StructureCheck(name="c-blocks", passed=False,
                                      detail=f"copy {copy.index} D vertex {y} is not joined to exactly C block {t}")
    return StructureCheck(name="c-blocks", passed=True, detail="C blocks partition C with one D vertex each")


def _check_c_degrees(graph: Graph, layout: GadgetLayout) -> StructureCheck:
    k = layout.params.k
    for copy in layout.copies:
        a_vertices = tuple(copy.a_vertices())
        for t, x in enumerate(copy.c_vertices()):
            expected = a_vertices + (copy.d[0] + t // k,)
            if graph.neighbors(x) != expected:
                return StructureCheck(name="c-degree", passed=False,
                                      detail=f"copy {copy.index} C vertex {x} has neighbors {list(graph.neighbors(x))}")
    return StructureCheck(name="c-degree", passed=True, detail=f"every C vertex has degree {k + 1}")


def _check_elimination(graph: Graph, layout: GadgetLayout) -> StructureCheck:
    """Delete D, then C, then B of every copy, each deletion removing at most k edges."""
    k = layout.params.k
    remaining = [graph.degree(v) for v in range(graph.n + 1)]
    removed = [False] * (graph.n + 1)
    order = []
    for attribute in ("d_vertices", "c_vertices", "b_vertices"):
        for copy in layout.copies:
            order.extend(getattr(copy, attribute)())
    for v in order:
        if remaining[v] > k:
            return StructureCheck(name="elimination", passed=False,
                                  detail=f"vertex {v} still has {remaining[v]} edges when deleted")
        removed[v] = True
        for u in graph.neighbors(v):
            if not removed[u]:
                remaining[u] -= 1
    left = sum(remaining[v] for v in range(1, graph.n + 1) if not removed[v]) // 2
    cross = closed_forms(layout.params).cross_edges
    if left != cross:
        return StructureCheck(name="elimination", passed=False,
                              detail=f"{left} edges remain among A vertices, expected {cross}")
    return StructureCheck(name="elimination", passed=True,
                          detail=f"{len(order)} deletions of at most {k} edges, {left} cross edges remain")


def _check_u_star(graph: Graph, layout: GadgetLayout) -> StructureCheck:
    k = layout.params.k
    u_star = [v for copy in layout.copies for v in copy.u]
    sub, _ = induced_subgraph(graph, u_star)
    result = orient_bounded(sub, k)
    if not result.feasible:
        return StructureCheck(name="u-star", passed=False,
                              detail=f"U* needs out-degree above {k}: {result.certificate.edge_count} edges on "
                                     f"{len(result.certificate.vertices)} vertices")
    return StructureCheck(name="u-star", passed=True,
                          detail=f"U* ({len(u_star)} vertices, {sub.m} edges) orients with out-degree <= {k}")


def _check_mad_window(graph: Graph, layout: GadgetLayout, edge_budget: int) -> StructureCheck:
    k = layout.params.k
    first = layout.copies[0]
    witness = list(first.a_vertices()) + list(first.c_vertices())
    witness_edges = induced_edge_count(graph, witness)
    density = Rational.from_fraction(Fraction(2 * witness_edges, len(witness)))
    above = witness_edges > (k - 1) * len(witness)
    detail = f"A_1+C_1 has Mad-witness density {density} > {2 * (k - 1)}" if above else \
        f"A_1+C_1 density {density} does not exceed {2 * (k - 1)}"
    if graph.m > edge_budget:
        return StructureCheck(name="mad-window", passed=above,
                              detail=detail + f"; orientation check skipped ({graph.m} edges over budget)")
    result = orient_bounded(graph, k)
    if not result.feasible:
        return StructureCheck(name="mad-window", passed=False,
                              detail=f"no orientation with out-degree <= {k}; " + detail)
    return StructureCheck(name="mad-window", passed=above,
                          detail=f"orientation with out-degree <= {k} exists; " + detail)


def verify_structure(graph: Graph, layout: GadgetLayout, edge_budget: Optional[int] = None) -> StructureReport:
    """
    Check the construction's structural claims.

    Checks, in order: every B block is joined to exactly its subset; the C
    blocks partition C with one D vertex each; every C vertex has degree
    k+1; deleting D, C then B removes at most k edges per vertex; U* orients
    with out-degree at most k; and 2(k-1) < Mad <= 2k, witnessed by A_1 + C_1
    below and by an orientation with out-degree at most k above.
    """
    edge_budget = edge_budget if edge_budget is not None else get_settings().flow_edge_budget
    checks = [
        _check_b_blocks(graph, layout),
        _check_c_blocks(graph, layout),
        _check_c_degrees(graph, layout),
        _check_elimination(graph, layout),
        _check_u_star(graph, layout),
        _check_mad_window(graph, layout, edge_budget),
    ]
    report = StructureReport(params=layout.params, checks=checks)
    for check in checks:
        logger.info(f"structure check {check.name}: {'PASS' if check.passed else 'FAIL'}")
    return report


def counting_check(k: int, r: int) -> CountingReport:
    """
    Compare the cross edges inside U* with the out-degree U* can absorb.

    With out-degrees in k+1..k+r on the A vertices, U* can absorb at most
    (k(r-1) + (r+2)(r-1)/2) |U_s| edges; once 2k > 2r^2 - r - 2 the
    |U_s|^2 C(r,2) cross edges exceed that.

    Raises:
        ConstructionError: If the hypothesis holds and the inequality does not
    """
    params = ConstructParams(k=k, r=r)
    u = params.u_size
    cross = closed_forms(params).cross_edges
    budget = (k * (r - 1) + (r + 2) * (r - 1) // 2) * u
    holds = cross > budget
    if params.hypothesis_ok and not holds:
        raise ConstructionError(f"counting inequality fails for k={k}, r={r}: {cross} <= {budget}")
    return CountingReport(
        k=k,
        r=r,
        u_size=u,
        cross_edges=cross,
        outdegree_budget=budget,
        inequality_holds=holds,
        hypothesis_threshold=Rational.from_fraction(Fraction(2 * r * r - r - 2, 2)),
        hypothesis_ok=params.hypothesis_ok,
    )
