import pytest
from hypothesis import given, settings

from properorient.exceptions import CapExceededError, InvariantViolation, PartitionError
from properorient.generator import gen_random, planar_families
from properorient.graph import find_tripartition_small, verify_proper
from properorient.hakimi import minimum_bounded_orientation
from properorient.models import Graph, Partition, RandomTripartiteSpec, Rational
from properorient.orient3 import (
    PipelineState,
    finalize_vertex,
    greedy_finish,
    part_caps,
    run,
    run_steps,
    step_matched,
    step_simple,
    step_weighted,
)

from .conftest import load_graph
from .strategies import tripartite_graphs


def _state(graph, parts, next_step=1, cap=None):
    k, d0 = minimum_bounded_orientation(graph)
    return PipelineState(graph, Partition(r=3, parts=tuple(parts)), k, d0, cap=cap, next_step=next_step)


def _assert_sound(graph, orientation, trace):
    report = verify_proper(graph, orientation, bound=trace.bound)
    assert report.is_proper
    assert report.within_bound
    assert trace.max_outdeg == report.max_outdeg
    assert all(record.passed for record in trace.all_assertions())
    return report


class TestSmallGraphs:
    def test_triangle(self):
        graph, partition = load_graph("k3.pog")
        orientation, trace = run(graph, partition)
        report = _assert_sound(graph, orientation, trace)
        assert report.outdeg == [2, 1, 0]
        assert trace.k == 1
        assert trace.bound == 8
        component = trace.components[0]
        assert all(not step.candidates for step in component.steps)
        assert component.greedy_order == [1, 2]

    def test_path(self):
        graph = Graph(n=4, edges=[(1, 2), (2, 3), (3, 4)])
        orientation, trace = run(graph, Partition(r=3, parts=(1, 2, 1, 2)))
        assert _assert_sound(graph, orientation, trace).outdeg == [0, 2, 1, 0]

    def test_five_cycle_without_parts(self):
        graph, partition = load_graph("c5.pog")
        assert partition is None
        orientation, trace = run(graph)
        assert _assert_sound(graph, orientation, trace).outdeg == [2, 0, 2, 1, 0]

    def test_star_freezes_center_in_step_one(self):
        graph, partition = load_graph("star9.pog")
        orientation, trace = run(graph, partition)
        report = _assert_sound(graph, orientation, trace)
        assert report.outdeg == [8, 0, 0, 0, 0, 0, 0, 0, 0, 1]
        first = trace.components[0].steps[0]
        assert first.step == 1
        assert first.candidates == [1]
        assert first.chosen == [1]
        assert orientation.tail_of()[(1, 10)] == 10

    def test_complete_bipartite(self):
        graph, partition = load_graph("k33.pog")
        orientation, trace = run(graph, partition)
        _assert_sound(graph, orientation, trace)
        assert trace.k == 2

    def test_disconnected_graph(self):
        graph = Graph(n=7, edges=[(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
        orientation, trace = run(graph, Partition(r=3, parts=(1, 2, 3, 1, 2, 3, 1)))
        report = _assert_sound(graph, orientation, trace)
        assert report.outdeg == [2, 1, 0, 2, 1, 0, 0]
        assert [c.index for c in trace.components] == [1, 2]
        assert trace.components[1].vertices == [4, 5, 6]

    def test_edgeless_graph(self):
        orientation, trace = run(Graph(n=3, edges=[]), Partition(r=3, parts=(1, 1, 1)))
        assert orientation.arcs == ()
        assert trace.components == []
        assert trace.max_outdeg == 0


class TestPartitionHandling:
    def test_improper_partition(self):
        graph, _ = load_graph("k3.pog")
        with pytest.raises(PartitionError):
            run(graph, Partition(r=3, parts=(1, 1, 2)))

    def test_too_many_parts(self):
        graph, _ = load_graph("k4.pog")
        with pytest.raises(PartitionError):
            run(graph, Partition(r=4, parts=(1, 2, 3, 4)))

    def test_not_three_colorable(self):
        graph, _ = load_graph("k4.pog")
        with pytest.raises(PartitionError):
            run(graph)

    def test_two_parts_are_accepted(self):
        graph, partition = load_graph("k33.pog")
        two = Partition(r=2, parts=partition.parts)
        orientation, trace = run(graph, two)
        _assert_sound(graph, orientation, trace)


class TestTrace:
    def test_trace_is_deterministic(self):
        graph, partition = gen_random(RandomTripartiteSpec(sizes=(8, 8, 8), p=Rational(num=2, den=5), seed=1))
        first, first_trace = run(graph, partition)
        second, second_trace = run(graph, partition)
        assert first == second
        assert first_trace.render() == second_trace.render()

    def test_render_lists_every_step(self):
        graph, partition = load_graph("star9.pog")
        _, trace = run(graph, partition)
        lines = trace.render().splitlines()
        assert lines[0] == "orient3 n=10 m=9 k=1 bound=8"
        assert sum(1 for line in lines if line.startswith("step ")) == 6
        assert "step 1 level=k+7 U=1 A=1 X=-" in lines
        assert any(line.startswith("ASSERT 1.1 PASS") for line in lines)
        assert lines[-1] == "result maxout=8 bound=8"

    def test_part_caps(self):
        assert part_caps(3, 2) == {1: 8, 2: 7, 3: 6}
        assert part_caps(6, 0) == {1: 1, 2: 1, 3: 1}


class TestSteps:
    def _step4_gadget(self):
        # a (V1) with five V2 leaves, x (V3) with four V2 leaves, a-x adjacent
        edges = [(1, 2)] + [(1, v) for v in range(3, 8)] + [(2, v) for v in range(8, 12)]
        parts = [1, 3] + [2] * 9
        return Graph(n=11, edges=edges), parts

    def test_weighted_step_rescues_through_matching(self):
        graph, parts = self._step4_gadget()
        state = _state(graph, parts, next_step=4)
        assert state.k == 1
        step_weighted(state)
        record = state.trace.steps[-1]
        assert record.candidates == [1, 2]
        assert record.chosen == [1]
        assert record.rejected == [2]
        assert record.rescued[""] == [2]
        assert record.matchings[""] == [(2, 1)]
        assert state.po.tail(graph.edge_id(1, 2)) == 1
        assert state.po.outdeg(1) == 5
        assert state.po.potential(2) == 4
        assert state.level_of == {1: 4}

        orientation = run_steps(state)
        report = verify_proper(graph, orientation)
        assert report.is_proper
        assert report.outdeg == [5, 4, 0, 0, 0, 0, 1, 0, 0, 0, 0]
        assert state.level_of == {1: 4, 2: 3}

    def _step5_gadget(self):
        # triangle 1-2-3 across the parts, two pendant leaves on each corner
        edges = [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)]
        parts = [1, 2, 3, 2, 2, 1, 1, 2, 2]
        return Graph(n=9, edges=edges), parts

    def test_matched_step_rescues_both_sides(self):
        graph, parts = self._step5_gadget()
        state = _state(graph, parts, next_step=5)
        assert state.k == 1
        step_matched(state, 3)
        record = state.trace.steps[-1]
        assert record.candidates == [1, 2, 3]
        assert record.chosen == [2]
        assert record.rescued == {"-1": [1], "-3": [3]}
        assert record.matchings == {"-1": [(1, 2)], "-3": [(3, 2)]}
        assert state.po.outdeg(2) == 4
        assert state.po.potential(1) == 3
        assert state.po.potential(3) == 3

        orientation = run_steps(state)
        assert verify_proper(graph, orientation).outdeg == [3, 4, 2, 0, 0, 0, 0, 0, 0]
        assert state.trace.steps[-1].chosen == [1]
        assert state.trace.greedy_order == [3]

    def _step_record(self, state, step):
        return next(record for record in state.trace.steps if record.step == step)

    def test_adjacent_candidates_split_between_steps_two_and_three(self):
        # a (V2) and b (V3) adjacent, six V1 leaves on each
        edges = [(1, 2)] + [(1, v) for v in range(3, 9)] + [(2, v) for v in range(9, 15)]
        graph = Graph(n=14, edges=edges)
        state = _state(graph, [2, 3] + [1] * 12)
        assert state.k == 1
        step_simple(state, 7, 1)
        step_simple(state, 6, 2)
        record = self._step_record(state, 2)
        assert record.candidates == [1, 2]
        assert record.chosen == [1]
        assert state.po.tail(graph.edge_id(1, 2)) == 1
        assert state.po.outdeg(1) == 7
        assert state.po.potential(2) == 6

        orientation = run_steps(state)
        report = verify_proper(graph, orientation)
        assert report.is_proper
        assert report.outdeg == [7, 6] + [0] * 12
        assert self._step_record(state, 3).chosen == [2]
        assert state.level_of == {1: 6, 2: 5}

    def test_nonadjacent_candidates_all_enter_step_three(self):
        # a (V3) and b (V1) share one V2 leaf, five more V2 leaves each
        edges = [(1, v) for v in range(3, 9)] + [(2, 3)] + [(2, v) for v in range(9, 14)]
        graph = Graph(n=13, edges=edges)
        state = _state(graph, [3, 1] + [2] * 11)
        orientation = run_steps(state)
        record = self._step_record(state, 3)
        assert record.candidates == [1, 2]
        assert record.chosen == [1, 2]
        assert verify_proper(graph, orientation).outdeg == [6, 6] + [0] * 11
        assert state.level_of == {1: 5, 2: 5}

    def test_nonadjacent_v2_v3_candidates_skip_the_matching(self):
        # a (V2) and b (V3) share one V1 leaf, four more V1 leaves each
        edges = [(1, v) for v in range(3, 8)] + [(2, 3)] + [(2, v) for v in range(8, 12)]
        graph = Graph(n=11, edges=edges)
        state = _state(graph, [2, 3] + [1] * 9)
        assert state.k == 1
        orientation = run_steps(state)
        record = self._step_record(state, 4)
        assert record.candidates == [1, 2]
        assert record.chosen == [1, 2]
        assert record.rejected == []
        assert record.rescued == {"": []}
        assert record.matchings == {"": []}
        assert verify_proper(graph, orientation).outdeg == [5, 5] + [0] * 9
        assert state.level_of == {1: 4, 2: 4}

    def test_component_cap_is_enforced(self):
        graph, parts = self._step5_gadget()
        state = _state(graph, parts, next_step=5, cap=2)
        with pytest.raises(CapExceededError):
            step_matched(state, 3)

    def test_steps_run_in_order(self):
        graph, parts = self._step5_gadget()
        state = _state(graph, parts)
        with pytest.raises(InvariantViolation) as info:
            step_matched(state, 3)
        assert info.value.invariant_id == "pipeline.order"
        with pytest.raises(InvariantViolation):
            greedy_finish(state)

    def test_unknown_level(self):
        graph, parts = self._step5_gadget()
        with pytest.raises(ValueError):
            step_matched(_state(graph, parts, next_step=5), 4)

    def test_simple_step_needs_its_priority_part(self):
        graph, parts = self._step5_gadget()
        with pytest.raises(InvariantViolation):
            step_simple(_state(graph, parts), 7, 2)


class TestFinalize:
    def _star(self):
        graph = Graph(n=7, edges=[(1, v) for v in range(2, 8)])
        return _state(graph, [1] + [2] * 6)

    def test_out_edges_go_to_lowest_neighbors(self):
        state = self._star()
        state.po.orient(1, 2)
        state.po.orient(1, 3)
        finalize_vertex(state, 1, 4)
        tails = {v: state.po.tail(state.graph.edge_id(1, v)) for v in range(2, 8)}
        assert tails == {2: 1, 3: 1, 4: 1, 5: 1, 6: 6, 7: 7}
        assert state.po.outdeg(1) == 4

    def test_target_out_of_reach(self):
        state = self._star()
        with pytest.raises(InvariantViolation) as info:
            finalize_vertex(state, 1, 7)
        assert info.value.invariant_id == "finalize.precondition"
        assert "p pog 7 6 3" in info.value.dump


class TestSoundness:
    def test_random_tripartite(self):
        graph, partition = gen_random(RandomTripartiteSpec(sizes=(8, 8, 8), p=Rational(num=2, den=5), seed=1))
        orientation, trace = run(graph, partition)
        report = _assert_sound(graph, orientation, trace)
        assert (graph.n, graph.m) == (24, 81)
        assert (trace.k, trace.bound, trace.max_outdeg) == (4, 11, 11)
        # 12 and 17 are the only degree-11 vertices and they are adjacent
        assert [v for v, d in enumerate(report.outdeg, start=1) if d == 11] == [17]
        first = trace.components[0].steps[0]
        assert first.candidates == [12, 17]
        assert first.chosen == [17]

    @pytest.mark.parametrize("name, graph, partition", planar_families(), ids=lambda value: value if isinstance(value, str) else None)
    def test_planar_families(self, name, graph, partition):
        orientation, trace = run(graph, partition)
        report = _assert_sound(graph, orientation, trace)
        ceiling = 9 if name.startswith(("fan-", "snake-")) else 10
        assert report.max_outdeg <= ceiling

    @settings(deadline=None, max_examples=60)
    @given(tripartite_graphs(max_part=5))
    def test_any_tripartite_graph(self, case):
        graph, partition = case
        orientation, trace = run(graph, partition)
        _assert_sound(graph, orientation, trace)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(2, 12))
    def test_random_seeds(self, seed):
        spec = RandomTripartiteSpec(sizes=(15, 15, 15), p=Rational(num=1, den=2), seed=seed)
        graph, partition = gen_random(spec)
        orientation, trace = run(graph, partition)
        _assert_sound(graph, orientation, trace)

    def test_two_colorable_input_found_by_backtracking(self):
        graph = Graph(n=4, edges=[(1, 2), (2, 3), (3, 4), (1, 4)])
        assert find_tripartition_small(graph).parts == (1, 2, 1, 2)
        orientation, trace = run(graph)
        _assert_sound(graph, orientation, trace)
