from itertools import combinations

from hypothesis import given, settings

from properorient.hallmatch import solve
from properorient.models import BipartiteInstance, HallCertificate, SemiMatching

from .strategies import semi_matching_instances


def _hall_holds(instance: BipartiteInstance) -> bool:
    """Exhaustive check of |S| <= w(N(S)) over every subset S of U."""
    for size in range(1, len(instance.u) + 1):
        for subset in combinations(instance.u, size):
            members = set(subset)
            neighborhood = {v for u, v in instance.edges if u in members}
            if size > sum(instance.w.get(v, 0) for v in neighborhood):
                return False
    return True


def test_two_share_one_slot():
    instance = BipartiteInstance(u=[1, 2], v=[3], edges=[(1, 3), (2, 3)], w={3: 1})
    outcome = solve(instance)
    assert isinstance(outcome, HallCertificate)
    assert outcome.subset == [1, 2]
    assert outcome.neighborhood == [3]
    assert outcome.neighborhood_weight == 1


def test_two_share_two_slots():
    instance = BipartiteInstance(u=[1, 2], v=[3], edges=[(1, 3), (2, 3)], w={3: 2})
    outcome = solve(instance)
    assert isinstance(outcome, SemiMatching)
    assert sorted(outcome.edges) == [(1, 3), (2, 3)]


def test_zero_capacity_takes_nobody():
    outcome = solve(BipartiteInstance(u=[1], v=[2], edges=[(1, 2)], w={2: 0}))
    assert isinstance(outcome, HallCertificate)
    assert outcome.subset == [1]


def test_isolated_u_vertex():
    outcome = solve(BipartiteInstance(u=[1, 2], v=[3], edges=[(1, 3)], w={3: 5}))
    assert isinstance(outcome, HallCertificate)
    assert outcome.subset == [2]
    assert outcome.neighborhood == []


def test_empty_u():
    outcome = solve(BipartiteInstance(u=[], v=[1], edges=[], w={1: 1}))
    assert outcome == SemiMatching(edges=[])


@settings(deadline=None, max_examples=150)
@given(semi_matching_instances())
def test_agrees_with_exhaustive_hall_condition(instance):
    outcome = solve(instance)
    if _hall_holds(instance):
        assert isinstance(outcome, SemiMatching)
        assert sorted(u for u, _ in outcome.edges) == sorted(instance.u)
        load = {}
        for u, v in outcome.edges:
            assert (u, v) in instance.edges
            load[v] = load.get(v, 0) + 1
        assert all(count <= instance.w.get(v, 0) for v, count in load.items())
    else:
        assert isinstance(outcome, HallCertificate)
        members = set(outcome.subset)
        neighborhood = sorted({v for u, v in instance.edges if u in members})
        assert outcome.neighborhood == neighborhood
        assert len(outcome.subset) > sum(instance.w.get(v, 0) for v in neighborhood)
