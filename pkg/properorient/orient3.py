"""
Proper orientations of 3-partite graphs with maximum out-degree at most k + 7,
where k = ceil(Mad/2).

Each connected component runs six steps. Steps 1 to 3 freeze independent sets
at out-degree exactly k+7, k+6, k+5 with V1, V2, V3 as priority part. Step 4
freezes a weighted optimum at k+4, steps 5 and 6 freeze optima at k+3 and
k+2, rescuing the vertices left at the level through semi-matchings. A
greedy phase orients what is left. Every intermediate claim is asserted at
run time and recorded in the trace; a failed check raises InvariantViolation
with the failing id, the offending vertex or edge and a reproducible dump.
"""

import heapq
import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from properorient.exceptions import InvariantViolation, PartitionError
from properorient.graph import (
    PartialOrientation,
    connected_components,
    find_tripartition_small,
    induced_subgraph,
    serialize_graph,
    verify_proper,
)
from properorient.hakimi import minimum_bounded_orientation
from properorient.hallmatch import solve as solve_semi_matching
from properorient.indset import improving_swap, lex_mwis, mis_bipartite
from properorient.models import (
    AssertionRecord,
    BipartiteInstance,
    ComponentTrace,
    Graph,
    HallCertificate,
    LexObjective,
    Orientation,
    Partition,
    StepRecord,
    StepTrace,
)

logger = logging.getLogger(__name__)

# offset above k of the level frozen at each step
STEP_LEVELS = {1: 7, 2: 6, 3: 5, 4: 4, 5: 3, 6: 2}
# priority part of the unweighted steps
PRIORITY_PART = {1: 1, 2: 2, 3: 3}


def part_caps(step: int, k: int) -> Dict[int, int]:
    """Upper bound on d_p of unassigned vertices of each part once a step is done."""
    table = {
        1: {1: 6},
        2: {1: 6, 2: 5},
        3: {1: 6, 2: 5, 3: 4},
        4: {1: 3, 2: 5, 3: 3},
        5: {1: 2, 2: 3, 3: 2},
        6: {1: 1, 2: 1, 3: 1},
    }
    return {part: k + offset for part, offset in table[step].items()}


class PipelineState:
    """
    Working state of one pipeline run on a connected graph.

    Attributes:
        graph: The component, labeled 1..n
        partition: Its tripartition
        k: ceil(Mad/2) of the component
        po: The partial orientation under construction
        level_of: Offset i for every vertex frozen at out-degree k+i
        next_step: The step to run next (7 once the greedy phase may start)
    """

    def __init__(
        self,
        graph: Graph,
        partition: Partition,
        k: int,
        d0: Orientation,
        cap: Optional[int] = None,
        labels: Optional[Sequence[int]] = None,
        index: int = 1,
        next_step: int = 1,
    ):
        self.graph = graph
        self.partition = partition
        self.k = k
        self.cap = cap
        self.labels = tuple(labels) if labels is not None else tuple(graph.vertices())
        self.po = PartialOrientation(graph)
        self.d0_tail = [0] * graph.m
        for tail, head in d0.arcs:
            self.d0_tail[graph.edge_id(tail, head)] = tail
        self.level_of: Dict[int, int] = {}
        self.levels: Dict[int, List[int]] = {offset: [] for offset in STEP_LEVELS.values()}
        self.next_step = next_step
        self.trace = ComponentTrace(index=index, vertices=list(self.labels), k=k)
        self._record: Optional[StepRecord] = None

    # vertex helpers

    def part(self, v: int) -> int:
        return self.partition.part_of(v)

    def is_assigned(self, v: int) -> bool:
        return v in self.level_of

    def unassigned(self) -> List[int]:
        return [v for v in self.graph.vertices() if v not in self.level_of]

    def original(self, vertices: Iterable[int]) -> List[int]:
        return [self.labels[v - 1] for v in vertices]

    def assign(self, v: int, offset: int) -> None:
        self.level_of[v] = offset
        self.levels[offset].append(v)

    def orient_d0_out(self, v: int) -> None:
        """Orient every unoriented edge at v that leaves v in D0."""
        for u, eid in self.po.unoriented_incident(v):
            if self.d0_tail[eid] == v:
                self.po.orient(v, u)

    # assertions

    def describe(self, item) -> str:
        if isinstance(item, tuple):
            u, v = item
            return f"edge {self.labels[u - 1]}-{self.labels[v - 1]}"
        return (
            f"v={self.labels[item - 1]} part={self.part(item)} "
            f"d_p={self.po.potential(item)} d_p+={self.po.outdeg(item)}"
        )

    def dump(self) -> str:
        lines = [f"# component {self.trace.index} labels {' '.join(map(str, self.labels))}"]
        lines.append(serialize_graph(self.graph, self.partition).rstrip("\n"))
        lines.extend("# " + line for line in self.trace.lines())
        return "\n".join(lines) + "\n"

    def check(self, invariant_id: str, condition: bool, detail: str) -> None:
        record = AssertionRecord(invariant_id=invariant_id, passed=condition, detail=detail)
        target = self._record.assertions if self._record is not None else self.trace.assertions
        target.append(record)
        logger.debug(record.line())
        if not condition:
            raise InvariantViolation(invariant_id, detail, self.dump())

    def check_all(self, invariant_id: str, items: Iterable, predicate: Callable, what: str) -> None:
        items = list(items)
        for item in items:
            if not predicate(item):
                self.check(invariant_id, False, f"{what} fails at {self.describe(item)}")
        self.check(invariant_id, True, f"{what} ({len(items)} checked)")

    def begin_step(self, step: int, candidates: Sequence[int], chosen: Sequence[int]) -> StepRecord:
        if step != self.next_step:
            raise InvariantViolation("pipeline.order", f"step {step} requested, step {self.next_step} due")
        chosen_set = set(chosen)
        record = StepRecord(
            step=step,
            level=STEP_LEVELS[step],
            candidates=self.original(candidates),
            chosen=self.original(chosen),
            rejected=self.original(v for v in candidates if v not in chosen_set),
        )
        self.trace.steps.append(record)
        self._record = record
        logger.debug(f"step {step}: |U|={len(candidates)} |A|={len(chosen)}")
        return record

    def end_step(self, step: int) -> None:
        self.check_ledger(step)
        self._record = None
        self.next_step = step + 1

    def check_ledger(self, step: int) -> None:
        """Assert the carried-over ledger that holds after every completed step."""
        k = self.k
        caps = part_caps(step, k)
        if step == 6:
            ids = {"oriented": "6.1", "exact": "6.2", "bound": "6.3", "outdeg": "6.4",
                   "unoriented": "6.5", "d0": "6.d0"}
        else:
            ids = {"oriented": f"{step}.1", "exact": f"{step}.2", "bound": f"{step}.3",
                   "d0": f"{step}.4", "outdeg": f"{step}.5", "unoriented": f"{step}.6"}
        assigned = sorted(self.level_of)
        unassigned = self.unassigned()
        edges = list(enumerate(self.graph.edges))
        po = self.po

        self.check_all(ids["oriented"], assigned, lambda v: po.unoriented_count(v) == 0,
                       "frozen vertices fully oriented")
        self.check_all(ids["exact"], assigned, lambda v: po.outdeg(v) == k + self.level_of[v],
                       "frozen vertices have d_p+ = k+i")
        self.check_all(ids["bound"], unassigned,
                       lambda v: self.part(v) not in caps or po.potential(v) <= caps[self.part(v)],
                       "part caps on d_p " + " ".join(f"V{p}<={c}" for p, c in sorted(caps.items())))
        out_edges = [(u, v) for eid, (u, v) in edges
                     if po.is_oriented(eid) and not self.is_assigned(po.tail(eid))]
        self.check_all(ids["d0"], out_edges,
                       lambda e: self.d0_tail[self.graph.edge_id(*e)] == po.tail(self.graph.edge_id(*e)),
                       "out-edges of unfrozen vertices are D0 arcs")
        self.check_all(ids["outdeg"], unassigned, lambda v: po.outdeg(v) <= k, "unfrozen d_p+ <= k")
        free_edges = [(u, v) for _, (u, v) in edges if not self.is_assigned(u) and not self.is_assigned(v)]
        self.check_all(ids["unoriented"], free_edges,
                       lambda e: not po.is_oriented(self.graph.edge_id(*e)),
                       "no oriented edge between unfrozen vertices")

    def check_choice(self, step: int, candidates: Sequence[int], chosen: Sequence[int]) -> None:
        chosen_set = set(chosen)
        pairs = [(u, v) for u in chosen for v in self.graph.neighbors(u) if v > u and v in chosen_set]
        self.check_all(f"{step}.independent", pairs, lambda e: False, "chosen set independent")
        earlier = [v for v in chosen if self.is_assigned(v)]
        self.check_all(f"{step}.disjoint", earlier, lambda v: False, "chosen vertices not yet frozen")


def finalize_vertex(state: PipelineState, v: int, target: int) -> PipelineState:
    """
    Orient every remaining edge at v so that d_p+(v) becomes target.

    Out-edges go to the lowest-index unoriented neighbors, in-edges to the rest.

    Raises:
        InvariantViolation: If d_p+(v) <= target <= d_p(v) does not hold
    """
    po = state.po
    free = po.unoriented_incident(v)
    need = target - po.outdeg(v)
    if need < 0 or need > len(free):
        raise InvariantViolation(
            "finalize.precondition",
            f"target {target} outside [{po.outdeg(v)}, {po.potential(v)}] at {state.describe(v)}",
            state.dump(),
        )
    for position, (u, _) in enumerate(free):
        if position < need:
            po.orient(v, u)
        else:
            po.orient(u, v)
    return state


def step_simple(state: PipelineState, offset: int, priority: int) -> PipelineState:
    """
    Steps 1 to 3: freeze an independent set at level k+offset.

    Every candidate of the priority part is taken; the rest is a maximum
    independent set of the bipartite remainder after removing the priority
    candidates' neighbors.
    """
    step = 8 - offset
    if PRIORITY_PART.get(step) != priority:
        raise InvariantViolation("pipeline.order", f"level k+{offset} runs with priority V{PRIORITY_PART.get(step)}")
    po, k = state.po, state.k
    level = k + offset

    candidates = [v for v in state.unassigned() if po.potential(v) >= level]
    forced = [v for v in candidates if state.part(v) == priority]
    blocked = set(forced)
    for v in forced:
        blocked.update(state.graph.neighbors(v))
    rest = [v for v in candidates if v not in blocked]
    sides = sorted({1, 2, 3} - {priority})
    top = [v for v in rest if state.part(v) == sides[0]]
    chosen = sorted(forced + list(mis_bipartite(state.graph, rest, top=top)))

    state.begin_step(step, candidates, chosen)
    state.check_choice(step, candidates, chosen)
    chosen_set = set(chosen)
    state.check_all(f"{step}.priority", [v for v in candidates if state.part(v) == priority],
                    lambda v: v in chosen_set, f"V{priority} candidates all chosen")

    for v in chosen:
        state.orient_d0_out(v)
    state.check_all(f"{step}.d0-out", chosen, lambda v: po.outdeg(v) <= k, "d_p+ <= k after D0 arcs")
    for v in chosen:
        finalize_vertex(state, v, level)
        state.assign(v, offset)

    leftover = [v for v in state.unassigned() if state.part(v) == priority]
    state.check_all(f"{step}.bound", leftover, lambda v: po.potential(v) <= level - 1,
                    f"unfrozen V{priority} below k+{offset}")
    state.end_step(step)
    logger.info(f"step {step}: froze {len(chosen)} of {len(candidates)} candidates at k+{offset}")
    return state


def _matching_instance(state: PipelineState, rescued: Sequence[int], chosen: Sequence[int],
                       weights: Dict[int, int]) -> BipartiteInstance:
    chosen_set = set(chosen)
    edges = [(x, a) for x in rescued for a in state.graph.neighbors(x) if a in chosen_set]
    return BipartiteInstance(u=list(rescued), v=list(chosen), edges=edges, w=weights)


def _rescue(state: PipelineState, step: int, name: str, rescued: Sequence[int],
            chosen: Sequence[int], weights: Dict[int, int]):
    record = state._record
    record.rescued[name] = state.original(rescued)
    outcome = solve_semi_matching(_matching_instance(state, rescued, chosen, weights))
    if isinstance(outcome, HallCertificate):
        state.check(f"{step}.hall{name}", False,
                    f"Hall set {state.original(outcome.subset)} with capacity {outcome.neighborhood_weight}")
    state.check(f"{step}.hall{name}", True, f"{len(rescued)} rescued vertices matched")
    record.matchings[name] = [tuple(state.original(pair)) for pair in outcome.edges]
    return outcome.edges


def step_weighted(state: PipelineState) -> PipelineState:
    """Step 4: freeze a weighted optimum at level k+4."""
    step, offset = 4, 4
    po, k, g = state.po, state.k, state.graph
    level = k + offset

    candidates = [
        v for v in state.unassigned()
        if (state.part(v) == 1 and po.potential(v) >= level)
        or (state.part(v) != 1 and po.potential(v) == level)
    ]
    w = {v: po.potential(v) - level if state.part(v) == 1 else 1 for v in candidates}
    objective = LexObjective(tiers=[
        w,
        {v: 1 for v in candidates if state.part(v) == 1},
        {v: 1 for v in candidates},
    ])
    chosen = lex_mwis(g, candidates, objective, state.cap).vertices
    chosen_set = set(chosen)
    state.begin_step(step, candidates, chosen)
    state.check_choice(step, candidates, chosen)
    swap = improving_swap(g, candidates, chosen, objective)
    state.check(f"{step}.local-opt", swap is None,
                "no single exchange improves the choice" if swap is None
                else f"inserting {state.describe(swap)} improves the choice")

    a1 = [v for v in chosen if state.part(v) == 1]
    a23 = [v for v in chosen if state.part(v) != 1]
    a23_set = set(a23)
    rejected_v1 = [v for v in candidates if v not in chosen_set and state.part(v) == 1]
    state.check_all(f"{step}.exchange", rejected_v1,
                    lambda v: sum(1 for u in g.neighbors(v) if u in a23_set) >= w[v] + 1,
                    "rejected V1 candidates have w+1 chosen neighbors in V2,V3")

    for v in a23:
        for u, _ in po.unoriented_incident(v):
            po.orient(v, u)
    state.check_all(f"{step}.o41-exact", a23, lambda v: po.outdeg(v) == level,
                    "V2,V3 choices frozen at k+4")
    for v in a23:
        state.assign(v, offset)

    state.check_all(f"{step}.v1-bound",
                    [v for v in state.unassigned() if state.part(v) == 1 and v not in chosen_set],
                    lambda v: po.potential(v) <= k + 3, "unfrozen V1 at most k+3")

    rescued = [v for v in candidates if v not in chosen_set and state.part(v) == 3 and po.potential(v) == level]
    state.check_all(f"{step}.x-prime", rescued,
                    lambda v: not any(u in a23_set and state.part(u) == 2 for u in g.neighbors(v)),
                    "rescued V3 vertices have no chosen V2 neighbor")
    matching = _rescue(state, step, "", rescued, a1, {a: w[a] for a in a1})
    load: Dict[int, int] = {}
    for _, a in matching:
        load[a] = load.get(a, 0) + 1
    state.check_all(f"{step}.matching-capacity", a1, lambda a: load.get(a, 0) <= w[a] <= 2,
                    "matching load within w <= 2")

    for x, a in matching:
        po.orient(a, x)
    for a in a1:
        state.orient_d0_out(a)
    state.check_all(f"{step}.v3-bound",
                    [v for v in state.unassigned() if state.part(v) == 3 and v not in chosen_set],
                    lambda v: po.potential(v) <= k + 3, "unfrozen V3 at most k+3")
    state.check_all(f"{step}.pre-final", a1, lambda a: po.outdeg(a) <= k + 2 < po.potential(a),
                    "V1 choices have d_p+ <= k+2 < d_p")

    for a in a1:
        finalize_vertex(state, a, level)
        state.assign(a, offset)
    state.end_step(step)
    logger.info(f"step {step}: froze {len(chosen)} of {len(candidates)} candidates at k+4, rescued {len(rescued)}")
    return state


def step_matched(state: PipelineState, offset: int) -> PipelineState:
    """Steps 5 and 6: freeze a maximum independent set at level k+offset, preferring V2."""
    if offset not in (3, 2):
        raise ValueError(f"step_matched handles levels k+3 and k+2, not k+{offset}")
    step = 8 - offset
    po, k, g = state.po, state.k, state.graph
    level = k + offset

    candidates = [v for v in state.unassigned() if po.potential(v) >= level]
    objective = LexObjective(tiers=[
        {v: 1 for v in candidates},
        {v: 1 for v in candidates if state.part(v) == 2},
    ])
    chosen = lex_mwis(g, candidates, objective, state.cap).vertices
    chosen_set = set(chosen)
    state.begin_step(step, candidates, chosen)
    state.check_choice(step, candidates, chosen)
    swap = improving_swap(g, candidates, chosen, objective)
    state.check(f"{step}.local-opt", swap is None,
                "no single exchange improves the choice" if swap is None
                else f"inserting {state.describe(swap)} improves the choice")

    a2 = [v for v in chosen if state.part(v) == 2]
    a13 = [v for v in chosen if state.part(v) != 2]
    a13_set = set(a13)
    rejected_v2 = [v for v in candidates if v not in chosen_set and state.part(v) == 2]
    state.check_all(f"{step}.exchange", rejected_v2,
                    lambda v: sum(1 for u in g.neighbors(v) if u in a13_set) >= 2,
                    "rejected V2 candidates have 2 chosen neighbors in V1,V3")

    for v in a13:
        for u, _ in po.unoriented_incident(v):
            po.orient(v, u)
    state.check_all(f"{step}.o{step}1-exact", a13, lambda v: po.outdeg(v) == level,
                    f"V1,V3 choices frozen at k+{offset}")
    for v in a13:
        state.assign(v, offset)

    v2_cap = k + 3 if offset == 3 else k + 1
    state.check_all(f"{step}.v2-bound",
                    [v for v in state.unassigned() if state.part(v) == 2 and v not in chosen_set],
                    lambda v: po.potential(v) <= v2_cap, f"unfrozen V2 at most k+{v2_cap - k}")

    matchings = []
    for j in (1, 3):
        rescued = [v for v in candidates
                   if v not in chosen_set and state.part(v) == j and po.potential(v) == level]
        state.check_all(f"{step}.x-prime-{j}", rescued,
                        lambda v: not any(u in a13_set and state.part(u) == 4 - j for u in g.neighbors(v)),
                        f"rescued V{j} vertices have no chosen V{4 - j} neighbor")
        matchings.extend(_rescue(state, step, f"-{j}", rescued, a2, {a: 1 for a in a2}))

    for x, a in matchings:
        po.orient(a, x)
    for a in a2:
        state.orient_d0_out(a)
    state.check_all(f"{step}.v13-bound",
                    [v for v in state.unassigned() if state.part(v) != 2 and v not in chosen_set],
                    lambda v: po.potential(v) <= level - 1, f"unfrozen V1,V3 below k+{offset}")
    if step == 5:
        state.check_all(f"{step}.pre-final", a2, lambda a: po.outdeg(a) <= k + 2 < po.potential(a),
                        "V2 choices have d_p+ <= k+2 < d_p")
    else:
        state.check_all(f"{step}.pre-final", a2, lambda a: po.outdeg(a) <= k + 2 <= po.potential(a),
                        "V2 choices have d_p+ <= k+2 <= d_p")

    for a in a2:
        finalize_vertex(state, a, level)
        state.assign(a, offset)
    state.end_step(step)
    logger.info(f"step {step}: froze {len(chosen)} of {len(candidates)} candidates at k+{offset}")
    return state


def greedy_finish(state: PipelineState) -> Orientation:
    """
    Orient the remaining edges: repeatedly take the vertex of largest d_p
    (lowest index on ties) and orient all its unoriented edges outward.
    """
    if state.next_step != 7:
        raise InvariantViolation("pipeline.order", f"greedy phase requested, step {state.next_step} due")
    po, k = state.po, state.k
    heap = [(-po.potential(v), v) for v in state.graph.vertices() if po.unoriented_count(v)]
    heapq.heapify(heap)
    order = state.trace.greedy_order
    selections = 0
    while heap:
        key, v = heapq.heappop(heap)
        if not po.unoriented_count(v) or -key != po.potential(v):
            continue
        value = po.potential(v)
        if value > k + 1:
            state.check("greedy.level", False, f"selected {state.describe(v)} above k+1")
        free = po.unoriented_incident(v)
        for u, _ in free:
            po.orient(v, u)
        for u, _ in free:
            if po.potential(u) >= value:
                state.check("greedy.pairwise", False,
                            f"neighbor {state.describe(u)} not below selected value {value}")
            if po.unoriented_count(u):
                heapq.heappush(heap, (-po.potential(u), u))
        order.append(state.labels[v - 1])
        selections += 1
    state.check("greedy.level", True, f"{selections} selections at most k+1")
    state.check("greedy.pairwise", True, "neighbors of every selection end strictly below it")

    orientation = po.to_orientation()
    report = verify_proper(state.graph, orientation, bound=k + 7)
    detail = f"first violation {state.describe(report.violations[0])}" if report.violations else "no violations"
    state.check("final.proper", report.is_proper, detail)
    state.check("final.bound", bool(report.within_bound), f"max out-degree {report.max_outdeg} <= {k + 7}")
    return orientation


def run_steps(state: PipelineState) -> Orientation:
    """Run every step still due on the state, then the greedy phase."""
    while state.next_step <= 6:
        step = state.next_step
        if step <= 3:
            step_simple(state, STEP_LEVELS[step], PRIORITY_PART[step])
        elif step == 4:
            step_weighted(state)
        else:
            step_matched(state, STEP_LEVELS[step])
    return greedy_finish(state)


def _tripartition(graph: Graph, partition: Optional[Partition]) -> Partition:
    if partition is None:
        found = find_tripartition_small(graph)
        if found is None:
            raise PartitionError("graph is not 3-colorable")
        return found
    if partition.r > 3:
        raise PartitionError(f"orient3 needs at most 3 parts, got {partition.r}")
    if len(partition.parts) != graph.n:
        raise PartitionError(f"partition covers {len(partition.parts)} vertices, graph has {graph.n}")
    bad = partition.violations(graph)
    if bad:
        raise PartitionError(f"edge {bad[0][0]}-{bad[0][1]} lies inside part {partition.part_of(bad[0][0])}")
    return Partition(r=3, parts=partition.parts)


def run(graph: Graph, partition: Optional[Partition] = None, cap: Optional[int] = None) -> Tuple[Orientation, StepTrace]:
    """
    Proper orientation with maximum out-degree at most ceil(Mad/2) + 7.

    Args:
        graph: Any 3-colorable simple graph
        partition: Proper partition into at most 3 parts; found by backtracking when None
        cap: Component cap for the exact independent-set search

    Returns:
        The verified orientation and the full step trace

    Raises:
        PartitionError: If the partition is not a proper tripartition
        InvariantViolation: If any asserted step invariant or the final check fails
        CapExceededError: If an independent-set component exceeds the cap
    """
    partition = _tripartition(graph, partition)
    trace = StepTrace(n=graph.n, m=graph.m)
    tails = [0] * graph.m
    k_global = 0
    logger.info(f"orient3 on n={graph.n} m={graph.m}")

    for index, component in enumerate(connected_components(graph), start=1):
        if len(component) == 1:
            continue
        sub, labels = induced_subgraph(graph, component)
        sub_partition = Partition(r=3, parts=tuple(partition.part_of(v) for v in labels))
        k, d0 = minimum_bounded_orientation(sub)
        k_global = max(k_global, k)
        state = PipelineState(sub, sub_partition, k, d0, cap=cap, labels=labels, index=index)
        trace.components.append(state.trace)
        logger.info(f"component {index}: n={sub.n} m={sub.m} k={k}")
        sub_orientation = run_steps(state)
        for tail, head in sub_orientation.arcs:
            tails[graph.edge_id(labels[tail - 1], labels[head - 1])] = labels[tail - 1]

    arcs = tuple((tails[eid], v if tails[eid] == u else u) for eid, (u, v) in enumerate(graph.edges))
    orientation = Orientation(arcs=arcs)
    trace.k = k_global
    trace.bound = k_global + 7
    report = verify_proper(graph, orientation, bound=trace.bound)
    trace.max_outdeg = report.max_outdeg
    for invariant_id, passed, detail in (
        ("run.proper", report.is_proper, f"{len(report.violations)} violations"),
        ("run.bound", bool(report.within_bound), f"max out-degree {report.max_outdeg} <= {trace.bound}"),
    ):
        trace.assertions.append(AssertionRecord(invariant_id=invariant_id, passed=passed, detail=detail))
        if not passed:
            raise InvariantViolation(invariant_id, detail, serialize_graph(graph, partition) + trace.render())
    logger.info(f"orient3 done: k={k_global} max out-degree {report.max_outdeg} (bound {trace.bound})")
    return orientation, trace
