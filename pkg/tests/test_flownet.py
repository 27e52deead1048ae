import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from properorient.flownet import max_flow, prescribed_outdegree_orientation
from properorient.models import FlowNetwork, Graph

from .strategies import graphs


def _conserves(net, flows):
    balance = [0] * net.node_count
    for (u, v, capacity), flow in zip(net.arcs, flows):
        assert 0 <= flow <= capacity
        balance[u] -= flow
        balance[v] += flow
    for node in range(net.node_count):
        if node not in (net.source, net.sink):
            assert balance[node] == 0
    return balance[net.sink]


@st.composite
def networks(draw):
    node_count = draw(st.integers(min_value=2, max_value=7))
    sink = node_count - 1
    arcs = []
    for u in range(node_count):
        for v in range(node_count):
            if u == v or v == 0 or u == sink:
                continue
            if draw(st.booleans()):
                arcs.append((u, v, draw(st.integers(min_value=0, max_value=5))))
    return FlowNetwork(node_count=node_count, arcs=arcs, source=0, sink=sink)


class TestMaxFlow:
    def test_small_network(self):
        net = FlowNetwork(
            node_count=4,
            arcs=[(0, 1, 3), (0, 2, 2), (1, 2, 1), (1, 3, 2), (2, 3, 3)],
            source=0,
            sink=3,
        )
        result = max_flow(net)
        assert result.value == 5
        assert result.cut.capacity == 5
        assert 0 in result.cut.source_side
        assert 3 not in result.cut.source_side
        assert _conserves(net, result.flows) == 5

    def test_cut_is_the_smallest_source_side(self):
        # {0} and {0, 1} are both minimum cuts
        net = FlowNetwork(node_count=4, arcs=[(0, 1, 1), (1, 2, 1), (2, 3, 5)], source=0, sink=3)
        result = max_flow(net)
        assert result.value == 1
        assert result.cut.source_side == [0]
        assert result.cut.capacity == 1

    def test_disconnected_sink(self):
        net = FlowNetwork(node_count=3, arcs=[(0, 1, 4)], source=0, sink=2)
        result = max_flow(net)
        assert result.value == 0
        assert result.flows == [0]
        assert sorted(result.cut.source_side) == [0, 1]

    def test_zero_capacity_arc(self):
        net = FlowNetwork(node_count=3, arcs=[(0, 1, 2), (1, 2, 0), (0, 2, 1)], source=0, sink=2)
        result = max_flow(net)
        assert result.value == 1
        assert result.flows == [0, 0, 1]

    def test_rejects_arc_into_source(self):
        with pytest.raises(ValidationError):
            FlowNetwork(node_count=3, arcs=[(1, 0, 1)], source=0, sink=2)

    @settings(deadline=None, max_examples=60)
    @given(networks())
    def test_flow_is_feasible_and_matches_its_cut(self, net):
        result = max_flow(net)
        assert _conserves(net, result.flows) == result.value
        side = set(result.cut.source_side)
        crossing = sum(c for u, v, c in net.arcs if u in side and v not in side)
        assert crossing == result.value == result.cut.capacity


class TestPrescribedOutdegree:
    def test_triangle_targets(self):
        graph = Graph(n=3, edges=[(1, 2), (1, 3), (2, 3)])
        for target in ({1: 2, 2: 1, 3: 0}, {1: 1, 2: 1, 3: 1}, {1: 0, 2: 2, 3: 1}):
            orientation = prescribed_outdegree_orientation(graph, target)
            assert orientation is not None
            assert orientation.outdegrees(3)[1:] == [target[1], target[2], target[3]]

    def test_wrong_total(self):
        graph = Graph(n=3, edges=[(1, 2), (1, 3), (2, 3)])
        assert prescribed_outdegree_orientation(graph, {1: 2, 2: 1, 3: 1}) is None

    def test_unrealizable_with_right_total(self):
        graph = Graph(n=4, edges=[(1, 2), (1, 3), (2, 3), (3, 4)])
        assert prescribed_outdegree_orientation(graph, {1: 0, 2: 0, 3: 3, 4: 1}) is None

    def test_target_above_degree(self):
        graph = Graph(n=3, edges=[(1, 2), (2, 3)])
        with pytest.raises(ValueError):
            prescribed_outdegree_orientation(graph, {1: 2, 2: 0, 3: 0})

    def test_edgeless(self):
        assert prescribed_outdegree_orientation(Graph(n=2, edges=[]), {}).arcs == ()

    @settings(deadline=None, max_examples=40)
    @given(graphs(max_n=6))
    def test_own_outdegrees_are_realizable(self, graph):
        # every orientation's out-degree sequence is realizable
        tails = {v: 0 for v in graph.vertices()}
        for u, _ in graph.edges:
            tails[u] += 1
        orientation = prescribed_outdegree_orientation(graph, tails)
        assert orientation is not None
        assert orientation.outdegrees(graph.n)[1:] == [tails[v] for v in graph.vertices()]
