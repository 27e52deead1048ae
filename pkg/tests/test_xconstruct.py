import pytest

from properorient.exceptions import ConstructionError
from properorient.graph import induced_edge_count
from properorient.models import ConstructParams, Graph, Rational
from properorient.xconstruct import build_extremal, count_closed_forms, counting_check, verify_structure


class TestClosedForms:
    def test_k7_r3(self):
        params = ConstructParams(k=7, r=3)
        assert (params.k, params.b_size, params.c_size, params.d_size) == (7, 9017, 539, 77)
        assert params.u_size == 7
        forms = count_closed_forms(params)
        assert forms.vertices == 28920
        assert forms.cross_edges == 147
        assert forms.total_edges == 108507

    def test_small_parameters(self):
        assert count_closed_forms(ConstructParams(k=1, r=3)).vertices == 48
        forms = count_closed_forms(ConstructParams(k=2, r=3))
        assert forms.vertices == 213
        assert forms.total_edges == 360

    def test_parameter_ranges(self):
        with pytest.raises(ValueError):
            ConstructParams(k=0, r=3)
        with pytest.raises(ValueError):
            ConstructParams(k=1, r=2)


class TestCountingCheck:
    def test_hypothesis_holds(self):
        report = counting_check(7, 3)
        assert report.cross_edges == 147
        assert report.outdegree_budget == 133
        assert report.inequality_holds
        assert report.hypothesis_threshold == Rational(num=13, den=2)
        assert report.hypothesis_ok
        assert "cross_edges=147 budget=133" in report.lines()

    def test_inequality_without_hypothesis(self):
        report = counting_check(6, 3)
        assert (report.cross_edges, report.outdegree_budget) == (108, 102)
        assert report.inequality_holds
        assert not report.hypothesis_ok

    def test_small_k_fails_quietly(self):
        report = counting_check(1, 3)
        assert (report.cross_edges, report.outdegree_budget) == (3, 7)
        assert not report.inequality_holds
        assert not report.hypothesis_ok


class TestBuild:
    @pytest.mark.parametrize("k", [1, 2])
    def test_structure_passes(self, k):
        params = ConstructParams(k=k, r=3)
        graph, partition, layout = build_extremal(params)
        forms = count_closed_forms(params)
        assert (graph.n, graph.m) == (forms.vertices, forms.total_edges)
        assert partition.is_proper(graph)
        report = verify_structure(graph, layout)
        assert report.passed, report.lines()
        assert [check.name for check in report.checks] == [
            "b-blocks", "c-blocks", "c-degree", "elimination", "u-star", "mad-window",
        ]

    def test_k1_layout(self):
        graph, partition, layout = build_extremal(ConstructParams(k=1, r=3))
        first = layout.copies[0]
        assert list(first.a_vertices()) == [1]
        assert list(first.b_vertices()) == [2, 3, 4, 5, 6]
        assert first.u == [1]
        u_star = [v for copy in layout.copies for v in copy.u]
        assert induced_edge_count(graph, u_star) == 3
        assert [partition.part_of(v) for v in (1, 2, 16)] == [1, 2, 1]

    def test_missing_block_edge_is_reported(self):
        graph, _, layout = build_extremal(ConstructParams(k=1, r=3))
        tampered = Graph(n=graph.n, edges=[e for e in graph.edges if e != (1, 2)])
        report = verify_structure(tampered, layout)
        assert not report.passed
        failed = [check for check in report.checks if not check.passed]
        assert [check.name for check in failed] == ["b-blocks"]
        assert "copy 1 block S=[1] vertex 2" in failed[0].detail

    def test_size_limit(self):
        with pytest.raises(ConstructionError):
            build_extremal(ConstructParams(k=7, r=3), max_vertices=1000)

    def test_skips_full_orientation_over_budget(self):
        graph, _, layout = build_extremal(ConstructParams(k=2, r=3))
        report = verify_structure(graph, layout, edge_budget=10)
        window = report.checks[-1]
        assert window.passed
        assert "skipped" in window.detail

    @pytest.mark.slow
    def test_k7_r3(self):
        params = ConstructParams(k=7, r=3)
        graph, _, layout = build_extremal(params)
        assert (graph.n, graph.m) == (28920, 108507)
        first = layout.copies[0]
        witness = list(first.a_vertices()) + list(first.c_vertices())
        assert len(witness) == 546
        assert induced_edge_count(graph, witness) == 3773
        assert verify_structure(graph, layout).passed

def _inside_b(layout):
    block = layout.copies[0].b_blocks[0]
    return [(block.start, block.start + 1)], []


def _without_c_a_edge(layout):
    first = layout.copies[0]
    return [], [(first.a[0], first.c[0])]


def _without_d_c_edge(layout):
    first = layout.copies[0]
    return [], [(first.c[0], first.d[0])]


def _a_cross_outside_u(layout):
    first, second = layout.copies[:2]
    return [(first.a_vertices()[-1], second.a_vertices()[-1])], []


class TestSingleEdgeMutations:
    @pytest.mark.parametrize("k, r, mutate, failing", [
        (2, 3, _inside_b, ["b-blocks"]),
        (2, 3, _without_c_a_edge, ["c-degree"]),
        (2, 3, _without_d_c_edge, ["c-blocks", "c-degree"]),
        (2, 4, _a_cross_outside_u, ["elimination"]),
    ], ids=["edge-inside-b", "missing-c-a", "missing-d-c", "a-cross-outside-u"])
    def test_mutation_fails_its_check(self, k, r, mutate, failing):
        graph, _, layout = build_extremal(ConstructParams(k=k, r=r))
        assert verify_structure(graph, layout).passed
        added, removed = mutate(layout)
        assert not set(added) & set(graph.edges)
        assert set(removed) <= set(graph.edges)
        edges = [e for e in graph.edges if e not in removed] + added
        report = verify_structure(Graph(n=graph.n, edges=edges), layout)
        assert [check.name for check in report.checks if not check.passed] == failing
