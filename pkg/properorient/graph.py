"""
Graph core: file formats, the proper-orientation verifier, small colorings,
components and the mutable partial orientation used by the pipeline.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import ValidationError

from properorient.config import get_settings
from properorient.exceptions import (
    CapExceededError,
    GraphFormatError,
    InvariantViolation,
    OrientationMismatchError,
    PartitionError,
)
from properorient.models import Graph, Orientation, Partition, ProperReport

logger = logging.getLogger(__name__)

GRAPH_HEADER = "p pog"
ORIENTATION_HEADER = "o pog"


def _content_lines(text: str) -> Iterable[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line.split()


def _ints(number: int, tokens: Sequence[str], count: int) -> List[int]:
    if len(tokens) != count:
        raise GraphFormatError(number, f"expected {count} fields, got {len(tokens)}")
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise GraphFormatError(number, f"non-integer field in {' '.join(tokens)!r}")


def parse_graph(text: str) -> Tuple[Graph, Optional[Partition]]:
    """
    Parse a graph file.

    Args:
        text: File content: a ``p pog n m r`` header, ``t v part`` lines and ``e u v`` lines

    Returns:
        The graph and its partition, or None when the file has no ``t`` lines

    Raises:
        GraphFormatError: Malformed line, loop, duplicate edge or count mismatch
        PartitionError: Part index out of range or an edge inside a part
    """
    lines = list(_content_lines(text))
    if not lines:
        raise GraphFormatError(None, "empty graph file")

    header_line, header = lines[0]
    if header[:2] != GRAPH_HEADER.split():
        raise GraphFormatError(header_line, f"expected '{GRAPH_HEADER} <n> <m> <r>' header")
    n, m, r = _ints(header_line, header[2:], 3)
    if n < 0 or m < 0 or r < 0:
        raise GraphFormatError(header_line, "negative count in header")

    parts: Dict[int, int] = {}
    edges: List[Tuple[int, int]] = []
    edge_lines: Dict[Tuple[int, int], int] = {}
    for number, tokens in lines[1:]:
        tag = tokens[0]
        if tag == "t":
            v, part = _ints(number, tokens[1:], 2)
            if not 1 <= v <= n:
                raise GraphFormatError(number, f"vertex {v} outside 1..{n}")
            if v in parts:
                raise GraphFormatError(number, f"vertex {v} assigned twice")
            if not 1 <= part <= r:
                raise PartitionError(f"part {part} of vertex {v} outside 1..{r}", line=number)
            parts[v] = part
        elif tag == "e":
            u, v = _ints(number, tokens[1:], 2)
            if u == v:
                raise GraphFormatError(number, f"loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(number, f"edge {u}-{v} outside 1..{n}")
            key = (min(u, v), max(u, v))
            if key in edge_lines:
                raise GraphFormatError(number, f"duplicate edge {u}-{v} (first at line {edge_lines[key]})")
            edge_lines[key] = number
            edges.append(key)
        else:
            raise GraphFormatError(number, f"unknown line type {tag!r}")

    if len(edges) != m:
        raise GraphFormatError(header_line, f"header announces {m} edges, file has {len(edges)}")
    if parts and len(parts) != n:
        missing = next(v for v in range(1, n + 1) if v not in parts)
        raise GraphFormatError(header_line, f"vertex {missing} has no part")

    try:
        graph = Graph(n=n, edges=edges)
    except ValidationError as e:
        raise GraphFormatError(None, str(e))

    if not parts:
        return graph, None
    partition = Partition(r=r, parts=tuple(parts[v] for v in range(1, n + 1)))
    for u, v in graph.edges:
        if parts[u] == parts[v]:
            raise PartitionError(f"edge {u}-{v} lies inside part {parts[u]}", line=edge_lines[(u, v)])
    return graph, partition


def serialize_graph(graph: Graph, partition: Optional[Partition] = None) -> str:
    """Canonical graph file text: t lines by vertex, e lines in lexicographic order."""
    r = partition.r if partition is not None else 0
    out = [f"{GRAPH_HEADER} {graph.n} {graph.m} {r}"]
    if partition is not None:
        out.extend(f"t {v} {partition.part_of(v)}" for v in graph.vertices())
    out.extend(f"e {u} {v}" for u, v in graph.edges)
    return "\n".join(out) + "\n"


def parse_orientation(text: str, graph: Optional[Graph] = None) -> Orientation:
    """
    Parse an orientation file (``o pog n m`` header and ``a tail head`` lines).

    Raises:
        GraphFormatError: Malformed line or count mismatch
        OrientationMismatchError: If a graph is given and the arcs do not cover its edges
    """
    lines = list(_content_lines(text))
    if not lines:
        raise GraphFormatError(None, "empty orientation file")
    header_line, header = lines[0]
    if header[:2] != ORIENTATION_HEADER.split():
        raise GraphFormatError(header_line, f"expected '{ORIENTATION_HEADER} <n> <m>' header")
    n, m = _ints(header_line, header[2:], 2)

    arcs = []
    for number, tokens in lines[1:]:
        if tokens[0] != "a":
            raise GraphFormatError(number, f"unknown line type {tokens[0]!r}")
        tail, head = _ints(number, tokens[1:], 2)
        if not (1 <= tail <= n and 1 <= head <= n) or tail == head:
            raise GraphFormatError(number, f"bad arc {tail}->{head}")
        arcs.append((tail, head))
    if len(arcs) != m:
        raise GraphFormatError(header_line, f"header announces {m} arcs, file has {len(arcs)}")

    orientation = Orientation(arcs=tuple(arcs))
    if graph is not None:
        if n != graph.n:
            raise OrientationMismatchError(f"orientation has n={n}, graph has n={graph.n}")
        check_covers(graph, orientation)
    return orientation


def serialize_orientation(graph: Graph, orientation: Orientation) -> str:
    """Orientation file text with arcs listed in the graph's edge order."""
    tails = orientation.tail_of()
    out = [f"{ORIENTATION_HEADER} {graph.n} {graph.m}"]
    for u, v in graph.edges:
        tail = tails[(u, v)]
        out.append(f"a {tail} {v if tail == u else u}")
    return "\n".join(out) + "\n"


def check_covers(graph: Graph, orientation: Orientation) -> None:
    """Raise OrientationMismatchError unless the arcs orient every edge exactly once."""
    seen = set()
    for tail, head in orientation.arcs:
        key = (min(tail, head), max(tail, head))
        if not graph.has_edge(tail, head):
            raise OrientationMismatchError(f"arc {tail}->{head} is not an edge of the graph")
        if key in seen:
            raise OrientationMismatchError(f"edge {key[0]}-{key[1]} oriented twice")
        seen.add(key)
    if len(seen) != graph.m:
        missing = next(e for e in graph.edges if e not in seen)
        raise OrientationMismatchError(f"edge {missing[0]}-{missing[1]} is not oriented")


def verify_proper(graph: Graph, orientation: Orientation, bound: Optional[int] = None) -> ProperReport:
    """
    Check that adjacent vertices have distinct out-degrees.

    Args:
        graph: The underlying graph
        orientation: Arcs covering every edge exactly once
        bound: Optional bound on the maximum out-degree to report against

    Returns:
        ProperReport with out-degrees and every violating edge

    Raises:
        OrientationMismatchError: If the orientation covers a different edge set
    """
    check_covers(graph, orientation)
    out = orientation.outdegrees(graph.n)
    violations = [(u, v) for u, v in graph.edges if out[u] == out[v]]
    max_outdeg = max(out[1:], default=0)
    report = ProperReport(
        is_proper=not violations,
        max_outdeg=max_outdeg,
        violations=violations,
        outdeg=out[1:],
        bound=bound,
        within_bound=None if bound is None else max_outdeg <= bound,
    )
    logger.debug(f"Verified orientation: proper={report.is_proper} max_outdeg={max_outdeg}")
    return report


def find_coloring_small(graph: Graph, r: int, cap: Optional[int] = None) -> Optional[Partition]:
    """
    Proper r-coloring by backtracking over vertices in index order.

    Colors are tried ascending and a vertex may open at most one new color,
    so the first coloring found is the lexicographically smallest one.

    Raises:
        CapExceededError: If n exceeds the cap
    """
    cap = cap if cap is not None else get_settings().tripartition_cap
    if graph.n > cap:
        raise CapExceededError("coloring backtracking", graph.n, cap)
    colors = [0] * (graph.n + 1)

    def extend(v: int, used: int) -> bool:
        if v > graph.n:
            return True
        taken = {colors[u] for u in graph.neighbors(v) if u < v}
        for color in range(1, min(used + 1, r) + 1):
            if color in taken:
                continue
            colors[v] = color
            if extend(v + 1, max(used, color)):
                return True
        colors[v] = 0
        return False

    if not extend(1, 0):
        return None
    return Partition(r=max(r, 1), parts=tuple(colors[1:]))


def find_tripartition_small(graph: Graph, cap: Optional[int] = None) -> Optional[Partition]:
    """A proper 3-partition of a small graph, or None if it is not 3-colorable."""
    return find_coloring_small(graph, 3, cap)


def chromatic_number(graph: Graph, cap: Optional[int] = None) -> int:
    if graph.n == 0:
        return 0
    for r in range(1, graph.n + 1):
        if find_coloring_small(graph, r, cap) is not None:
            return r
    return graph.n


def to_networkx(graph: Graph, vertices: Optional[Iterable[int]] = None) -> nx.Graph:
    """networkx copy of the subgraph induced by vertices (all vertices when omitted)."""
    members = graph.vertices() if vertices is None else sorted(set(vertices))
    inside = set(members)
    sub = nx.Graph()
    sub.add_nodes_from(members)
    sub.add_edges_from((u, v) for u in members for v in graph.neighbors(u) if v > u and v in inside)
    return sub


def connected_components(graph: Graph, vertices: Optional[Iterable[int]] = None) -> List[Tuple[int, ...]]:
    """Components of the induced subgraph as sorted vertex tuples, ordered by smallest vertex."""
    return sorted(tuple(sorted(c)) for c in nx.connected_components(to_networkx(graph, vertices)))


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """
    Induced subgraph relabeled 1..len(vertices) monotonically.

    Returns:
        The subgraph and the tuple mapping new label i to old label labels[i - 1]
    """
    labels = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(labels, start=1)}
    edges = [
        (index[u], index[v])
        for u in labels
        for v in graph.neighbors(u)
        if v > u and v in index
    ]
    return Graph(n=len(labels), edges=edges), labels


def induced_edge_count(graph: Graph, vertices: Iterable[int]) -> int:
    members = set(vertices)
    return sum(1 for v in members for u in graph.neighbors(v) if u > v and u in members)


class PartialOrientation:
    """
    Orientation under construction.

    Tracks per vertex the out-degree d_p+ and the potential out-degree d_p
    (out-edges plus still-unoriented edges). Single writer.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        self._tail = [0] * graph.m
        self._outdeg = [0] * (graph.n + 1)
        self._unoriented = [graph.degree(v) if v else 0 for v in range(graph.n + 1)]
        self.oriented_count = 0

    def tail(self, eid: int) -> int:
        """Tail of edge eid, or 0 while unoriented."""
        return self._tail[eid]

    def is_oriented(self, eid: int) -> bool:
        return self._tail[eid] != 0

    def outdeg(self, v: int) -> int:
        return self._outdeg[v]

    def potential(self, v: int) -> int:
        return self._outdeg[v] + self._unoriented[v]

    def unoriented_count(self, v: int) -> int:
        return self._unoriented[v]

    def unoriented_incident(self, v: int) -> List[Tuple[int, int]]:
        """(neighbor, edge id) for unoriented edges at v, ascending by neighbor."""
        return [(u, eid) for u, eid in self.graph.incident(v) if not self._tail[eid]]

    def orient(self, tail: int, head: int) -> None:
        eid = self.graph.edge_id(tail, head)
        if self._tail[eid]:
            raise InvariantViolation(
                "partial.single-orientation",
                f"edge {tail}-{head} already oriented out of {self._tail[eid]}",
            )
        self._tail[eid] = tail
        self._outdeg[tail] += 1
        self._unoriented[tail] -= 1
        self._unoriented[head] -= 1
        self.oriented_count += 1

    def is_complete(self) -> bool:
        return self.oriented_count == self.graph.m

    def to_orientation(self) -> Orientation:
        if not self.is_complete():
            raise InvariantViolation(
                "partial.complete", f"{self.graph.m - self.oriented_count} edges still unoriented"
            )
        arcs = []
        for eid, (u, v) in enumerate(self.graph.edges):
            tail = self._tail[eid]
            arcs.append((tail, v if tail == u else u))
        return Orientation(arcs=tuple(arcs))
