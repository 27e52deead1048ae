"""
Pydantic models for graphs, orientations, certificates and reports.
"""

from fractions import Fraction
from math import comb, gcd
from typing import Any, Dict, List, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PrivateAttr,
    ValidationInfo,
    computed_field,
    field_validator,
    model_validator,
)

Edge = Tuple[int, int]


class Rational(BaseModel):
    """Exact non-negative rational in lowest terms, rendered as ``p/q``."""
    model_config = ConfigDict(frozen=True)

    num: int = Field(..., ge=0, description="Numerator")
    den: int = Field(1, ge=1, description="Denominator")

    @model_validator(mode="after")
    def _lowest_terms(self) -> "Rational":
        if gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not in lowest terms")
        return self

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Rational":
        value = Fraction(value)
        return cls(num=value.numerator, den=value.denominator)

    @classmethod
    def parse(cls, text: str) -> "Rational":
        """Parse ``p/q`` or a bare integer."""
        try:
            return cls.from_fraction(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {text!r}") from e

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __lt__(self, other: "Rational") -> bool:
        return self.as_fraction() < other.as_fraction()

    def __le__(self, other: "Rational") -> bool:
        return self.as_fraction() <= other.as_fraction()

    def __gt__(self, other: "Rational") -> bool:
        return self.as_fraction() > other.as_fraction()

    def __ge__(self, other: "Rational") -> bool:
        return self.as_fraction() >= other.as_fraction()


class Graph(BaseModel):
    """
    Simple undirected graph on vertices 1..n.

    Edges are stored as sorted pairs in lexicographic order; neighbor lists
    are ascending.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Vertex count")
    edges: Tuple[Edge, ...] = Field(default=(), description="Edges as (u, v) with u < v")

    _adjacency: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())
    _incidence: Tuple[Tuple[Tuple[int, int], ...], ...] = PrivateAttr(default=())
    _edge_ids: Dict[Edge, int] = PrivateAttr(default_factory=dict)

    @model_validator(mode="before")
    @classmethod
    def _canonical_edges(cls, data: Any) -> Any:
        if isinstance(data, dict) and "edges" in data:
            data = dict(data)
            data["edges"] = tuple(sorted(tuple(sorted(e)) for e in data["edges"]))
        return data

    # runs before model_post_init builds the incidence lists
    @field_validator("edges")
    @classmethod
    def _simple(cls, edges: Tuple[Edge, ...], info: ValidationInfo) -> Tuple[Edge, ...]:
        n = info.data.get("n")
        if n is None:
            return edges
        previous = None
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u < 1 or v > n:
                raise ValueError(f"edge {u}-{v} outside 1..{n}")
            if (u, v) == previous:
                raise ValueError(f"duplicate edge {u}-{v}")
            previous = (u, v)
        return edges

    def model_post_init(self, __context: Any) -> None:
        incidence: List[List[Tuple[int, int]]] = [[] for _ in range(self.n + 1)]
        for eid, (u, v) in enumerate(self.edges):
            incidence[u].append((v, eid))
            incidence[v].append((u, eid))
        for items in incidence:
            items.sort()
        self._incidence = tuple(tuple(items) for items in incidence)
        self._adjacency = tuple(tuple(u for u, _ in items) for items in incidence)
        self._edge_ids = {e: i for i, e in enumerate(self.edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adjacency[v]

    def incident(self, v: int) -> Tuple[Tuple[int, int], ...]:
        """(neighbor, edge id) pairs at v, ascending by neighbor."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adjacency[1:]), default=0)

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        if key not in self._edge_ids:
            raise KeyError(f"no edge {u}-{v}")
        return self._edge_ids[key]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_ids


class Partition(BaseModel):
    """Assignment of every vertex to one of r parts; parts may be empty."""
    model_config = ConfigDict(frozen=True)

    r: int = Field(..., ge=1, description="Number of parts")
    parts: Tuple[int, ...] = Field(..., description="parts[v - 1] is the part of vertex v")

    @model_validator(mode="after")
    def _in_range(self) -> "Partition":
        for index, part in enumerate(self.parts, start=1):
            if not 1 <= part <= self.r:
                raise ValueError(f"vertex {index} has part {part} outside 1..{self.r}")
        return self

    def part_of(self, v: int) -> int:
        return self.parts[v - 1]

    def members(self, part: int) -> Tuple[int, ...]:
        return tuple(v for v, p in enumerate(self.parts, start=1) if p == part)

    def violations(self, graph: Graph) -> List[Edge]:
        """Edges whose endpoints share a part."""
        return [(u, v) for u, v in graph.edges if self.parts[u - 1] == self.parts[v - 1]]

    def is_proper(self, graph: Graph) -> bool:
        return len(self.parts) == graph.n and not self.violations(graph)


class Orientation(BaseModel):
    """Total orientation given as arcs (tail, head)."""
    model_config = ConfigDict(frozen=True)

    arcs: Tuple[Edge, ...] = Field(default=(), description="Arcs as (tail, head)")

    def outdegrees(self, n: int) -> List[int]:
        """Out-degree per vertex; index 0 is unused."""
        out = [0] * (n + 1)
        for tail, _ in self.arcs:
            out[tail] += 1
        return out

    def tail_of(self) -> Dict[Edge, int]:
        return {(min(t, h), max(t, h)): t for t, h in self.arcs}


class ProperReport(BaseModel):
    """Result of checking an orientation for properness."""
    is_proper: bool = Field(..., description="True iff adjacent out-degrees always differ")
    max_outdeg: int = Field(..., ge=0, description="Maximum out-degree")
    violations: List[Edge] = Field(default_factory=list, description="Edges with equal end out-degrees")
    outdeg: List[int] = Field(default_factory=list, description="Out-degrees of vertices 1..n in order")
    bound: Optional[int] = Field(None, description="Requested bound on the maximum out-degree")
    within_bound: Optional[bool] = Field(None, description="max_outdeg <= bound, when a bound was given")

    @model_validator(mode="after")
    def _consistent(self) -> "ProperReport":
        if self.is_proper != (not self.violations):
            raise ValueError("is_proper must hold exactly when there are no violations")
        return self


class FlowNetwork(BaseModel):
    """Directed network with exact integer capacities."""
    node_count: int = Field(..., ge=2)
    arcs: List[Tuple[int, int, int]] = Field(default_factory=list, description="(tail, head, capacity)")
    source: int = Field(..., ge=0)
    sink: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _well_formed(self) -> "FlowNetwork":
        if self.source == self.sink:
            raise ValueError("source and sink coincide")
        for u, v, c in self.arcs:
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise ValueError(f"arc {u}->{v} references an unknown node")
            if c < 0:
                raise ValueError(f"arc {u}->{v} has negative capacity")
            if v == self.source or u == self.sink:
                raise ValueError(f"arc {u}->{v} enters the source or leaves the sink")
        return self


class CutCertificate(BaseModel):
    source_side: List[int] = Field(..., description="Nodes reachable from the source in the residual network")
    capacity: int = Field(..., ge=0)


class MaxFlowResult(BaseModel):
    value: int = Field(..., ge=0)
    cut: CutCertificate
    flows: List[int] = Field(..., description="Flow on each arc, aligned with FlowNetwork.arcs")


class DensityCertificate(BaseModel):
    """A vertex set H with 2|E(G[H])|/|H| equal to the reported Mad."""
    vertices: List[int] = Field(default_factory=list)
    edge_count: int = Field(..., ge=0)
    mad: Rational


class InfeasibilityCertificate(BaseModel):
    """A vertex set S with |E(G[S])| > k|S|, proving no orientation with out-degrees <= k exists."""
    vertices: List[int]
    edge_count: int = Field(..., ge=0)
    k: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _dense_enough(self) -> "InfeasibilityCertificate":
        if self.edge_count <= self.k * len(self.vertices):
            raise ValueError("certificate set is not denser than k")
        return self


class BoundedOrientationResult(BaseModel):
    k: int = Field(..., ge=0)
    orientation: Optional[Orientation] = None
    certificate: Optional[InfeasibilityCertificate] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "BoundedOrientationResult":
        if (self.orientation is None) == (self.certificate is None):
            raise ValueError("exactly one of orientation and certificate must be set")
        return self

    @property
    def feasible(self) -> bool:
        return self.orientation is not None


class BipartiteInstance(BaseModel):
    """Semi-matching instance: every U vertex needs one partner, V vertex v takes at most w[v]."""
    u: List[int] = Field(default_factory=list)
    v: List[int] = Field(default_factory=list)
    edges: List[Edge] = Field(default_factory=list, description="Pairs (u, v) with u in U and v in V")
    w: Dict[int, int] = Field(default_factory=dict, description="Capacity of each V vertex")

    @model_validator(mode="after")
    def _sides(self) -> "BipartiteInstance":
        u_side, v_side = set(self.u), set(self.v)
        if u_side & v_side:
            raise ValueError("U and V overlap")
        for a, b in self.edges:
            if a not in u_side or b not in v_side:
                raise ValueError(f"edge {a}-{b} does not join U to V")
        for vertex in self.v:
            if self.w.get(vertex, 0) < 0:
                raise ValueError(f"negative capacity at {vertex}")
        return self


class SemiMatching(BaseModel):
    edges: List[Edge] = Field(default_factory=list, description="Chosen pairs (u, v)")


class HallCertificate(BaseModel):
    """A subset S of U with |S| > w(N(S))."""
    subset: List[int]
    neighborhood: List[int]
    neighborhood_weight: int = Field(..., ge=0)


class LexObjective(BaseModel):
    """Tiers of non-negative vertex weights compared lexicographically."""
    tiers: List[Dict[int, int]] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _non_negative(self) -> "LexObjective":
        for tier in self.tiers:
            if any(value < 0 for value in tier.values()):
                raise ValueError("tier weights must be non-negative")
        return self

    def value(self, vertices) -> Tuple[int, ...]:
        return tuple(sum(tier.get(v, 0) for v in vertices) for tier in self.tiers)


class IndSetResult(BaseModel):
    vertices: List[int]
    tier_values: List[int]


class AssertionRecord(BaseModel):
    invariant_id: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"ASSERT {self.invariant_id} {status} {self.detail}".rstrip()


def _vertex_list(vertices) -> str:
    return ",".join(str(v) for v in vertices) if vertices else "-"


class StepRecord(BaseModel):
    """Everything one pipeline step chose and checked."""
    step: int = Field(..., ge=1, le=6)
    level: int = Field(..., description="Offset i of the level k+i")
    candidates: List[int] = Field(default_factory=list, description="U set")
    chosen: List[int] = Field(default_factory=list, description="A set")
    rejected: List[int] = Field(default_factory=list, description="X set")
    rescued: Dict[str, List[int]] = Field(default_factory=dict, description="X' sets by name")
    matchings: Dict[str, List[Edge]] = Field(default_factory=dict, description="Matching edges (x, a) by name")
    assertions: List[AssertionRecord] = Field(default_factory=list)

    def lines(self) -> List[str]:
        out = [
            f"step {self.step} level=k+{self.level} U={_vertex_list(self.candidates)} "
            f"A={_vertex_list(self.chosen)} X={_vertex_list(self.rejected)}"
        ]
        for name, vertices in self.rescued.items():
            out.append(f"rescue {name} {_vertex_list(vertices)}")
        for name, edges in self.matchings.items():
            pairs = " ".join(f"{a}->{x}" for x, a in edges) or "-"
            out.append(f"matching {name} {pairs}")
        out.extend(record.line() for record in self.assertions)
        return out


class ComponentTrace(BaseModel):
    index: int
    vertices: List[int]
    k: int
    steps: List[StepRecord] = Field(default_factory=list)
    greedy_order: List[int] = Field(default_factory=list)
    assertions: List[AssertionRecord] = Field(default_factory=list, description="Greedy and final checks")

    def lines(self) -> List[str]:
        out = [f"component {self.index} size={len(self.vertices)} k={self.k}"]
        for step in self.steps:
            out.extend(step.lines())
        out.append(f"greedy order={_vertex_list(self.greedy_order)}")
        out.extend(record.line() for record in self.assertions)
        return out


class StepTrace(BaseModel):
    """Full record of one orient3 run, rendered one fact per line."""
    n: int
    m: int
    k: int = 0
    bound: int = 7
    components: List[ComponentTrace] = Field(default_factory=list)
    assertions: List[AssertionRecord] = Field(default_factory=list)
    max_outdeg: Optional[int] = None

    def lines(self) -> List[str]:
        out = [f"orient3 n={self.n} m={self.m} k={self.k} bound={self.bound}"]
        for component in self.components:
            out.extend(component.lines())
        out.extend(record.line() for record in self.assertions)
        if self.max_outdeg is not None:
            out.append(f"result maxout={self.max_outdeg} bound={self.bound}")
        return out

    def render(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def all_assertions(self) -> List[AssertionRecord]:
        records = []
        for component in self.components:
            for step in component.steps:
                records.extend(step.assertions)
            records.extend(component.assertions)
        records.extend(self.assertions)
        return records


class ConstructParams(BaseModel):
    """Parameters of the extremal construction."""
    k: int = Field(..., ge=1)
    r: int = Field(..., ge=3)

    @computed_field
    @property
    def hypothesis_ok(self) -> bool:
        return 2 * self.k > 2 * self.r * self.r - self.r - 2

    @property
    def u_size(self) -> int:
        return (2 * self.k) // (self.r - 1)

    @property
    def b_block_size(self) -> int:
        return self.k * (self.k + self.r) + 1

    @property
    def c_size(self) -> int:
        return (self.k + self.r + 1) * self.k * self.k

    @property
    def d_size(self) -> int:
        return (self.k + self.r + 1) * self.k

    @property
    def b_size(self) -> int:
        return (2 ** self.k - 1) * self.b_block_size

    @property
    def copy_size(self) -> int:
        return self.k + self.b_size + self.c_size + self.d_size


class BBlock(BaseModel):
    subset: List[int] = Field(..., description="The A vertices every block vertex is joined to")
    start: int
    stop: int


class CopyLayout(BaseModel):
    """Vertex ranges [start, stop) of one gadget copy."""
    index: int = Field(..., ge=1)
    a: Tuple[int, int]
    b: Tuple[int, int]
    c: Tuple[int, int]
    d: Tuple[int, int]
    b_blocks: List[BBlock] = Field(default_factory=list)
    u: List[int] = Field(default_factory=list)

    def a_vertices(self) -> range:
        return range(*self.a)

    def b_vertices(self) -> range:
        return range(*self.b)

    def c_vertices(self) -> range:
        return range(*self.c)

    def d_vertices(self) -> range:
        return range(*self.d)


class GadgetLayout(BaseModel):
    params: ConstructParams
    copies: List[CopyLayout] = Field(default_factory=list)


class ClosedForms(BaseModel):
    vertices: int
    edges_per_copy: int
    cross_edges: int
    total_edges: int


def closed_forms(params: ConstructParams) -> ClosedForms:
    """Vertex and edge counts of the extremal construction without building it."""
    k, r = params.k, params.r
    b_edges = sum(i * comb(k, i) for i in range(1, k + 1)) * params.b_block_size
    per_copy = b_edges + k * params.c_size + params.c_size
    cross = params.u_size ** 2 * comb(r, 2)
    return ClosedForms(
        vertices=r * params.copy_size,
        edges_per_copy=per_copy,
        cross_edges=cross,
        total_edges=r * per_copy + cross,
    )


class StructureCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class StructureReport(BaseModel):
    params: ConstructParams
    checks: List[StructureCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def lines(self) -> List[str]:
        out = []
        for check in self.checks:
            status = "PASS" if check.passed else "FAIL"
            out.append(f"check {check.name} {status} {check.detail}".rstrip())
        return out


class CountingReport(BaseModel):
    """Arithmetic of the lower-bound argument: cross edges against the out-degree budget."""
    k: int
    r: int
    u_size: int
    cross_edges: int
    outdegree_budget: int
    inequality_holds: bool
    hypothesis_threshold: Rational = Field(..., description="k must exceed this value")
    hypothesis_ok: bool

    def lines(self) -> List[str]:
        return [
            f"k={self.k} r={self.r} u={self.u_size}",
            f"cross_edges={self.cross_edges} budget={self.outdegree_budget}",
            f"inequality={'holds' if self.inequality_holds else 'fails'}",
            f"hypothesis k>{self.hypothesis_threshold} {'ok' if self.hypothesis_ok else 'fails'}",
        ]


class RandomTripartiteSpec(BaseModel):
    sizes: Tuple[int, int, int] = Field(..., description="Part sizes (a, b, c)")
    p: Rational = Field(..., description="Edge probability")
    seed: int = Field(..., ge=0, lt=2 ** 64)

    @model_validator(mode="after")
    def _valid(self) -> "RandomTripartiteSpec":
        if any(size < 0 for size in self.sizes):
            raise ValueError("part sizes must be non-negative")
        if self.p.num > self.p.den:
            raise ValueError("probability exceeds 1")
        return self


class RunRecord(BaseModel):
    """One row of the run log."""
    model_config = ConfigDict(from_attributes=True)

    id: Optional[int] = None
    timestamp: Optional[str] = None
    command: str
    source: str = Field("", description="Input file or request origin")
    n: int = 0
    m: int = 0
    k: Optional[int] = None
    bound: Optional[int] = None
    max_outdeg: Optional[int] = None
    success: bool = True
    error_message: Optional[str] = None
    execution_time_seconds: Optional[float] = None


class RunStats(BaseModel):
    total_runs: int = Field(..., description="Runs logged")
    successful_runs: int
    failed_runs: int
    max_outdeg_seen: Optional[int] = None
    average_execution_time: Optional[float] = None


# Request and response bodies of the HTTP service


class GraphRequest(BaseModel):
    graph_text: str = Field(..., description="Graph file content")


class VerifyRequest(GraphRequest):
    orientation_text: str = Field(..., description="Orientation file content")
    bound: Optional[int] = Field(None, ge=0)


class HakimiRequest(GraphRequest):
    k: Optional[int] = Field(None, ge=0, description="Out-degree bound; defaults to ceil(Mad/2)")


class Orient3Request(GraphRequest):
    cap: Optional[int] = Field(None, ge=1, description="Component cap for the exact independent set search")


class ChiRequest(GraphRequest):
    max_k: Optional[int] = Field(None, ge=0, description="Last out-degree bound tried; defaults to the maximum degree")


class MadResponse(BaseModel):
    mad: str
    k: int
    certificate: DensityCertificate


class HakimiResponse(BaseModel):
    k: int
    feasible: bool
    orientation_text: Optional[str] = None
    certificate: Optional[InfeasibilityCertificate] = None


class Orient3Response(BaseModel):
    k: int
    bound: int
    max_outdeg: int
    orientation_text: str
    trace: List[str]


class ChiResponse(BaseModel):
    chi_orient: Optional[int] = Field(None, description="None when it exceeds the requested max_k")
    orientation_text: Optional[str] = None


class ConstructionCheckResponse(BaseModel):
    counting: CountingReport
    structure: Optional[List[StructureCheck]] = None
    structure_passed: Optional[bool] = None
