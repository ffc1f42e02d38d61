import pytest
from hypothesis import given
from hypothesis import strategies as st

from fairgame.game import (
    EVEN,
    ODD,
    OddFairGame,
    Region,
    SubgameView,
    least_even_upperbound,
    priority_class,
    validate,
)

from conftest import build_game


def test_priority_shift_applied_only_when_zero_present():
    g = build_game([0, 1], [0, 3], [[1], [0]])
    assert g.shift == 2
    assert g.priority == (2, 5)
    assert g.original_priority == (0, 3)

    h = build_game([0, 1], [1, 3], [[1], [0]])
    assert h.shift == 0
    assert h.priority == (1, 3)


def test_predecessors_are_exact_transpose():
    g = build_game([0, 1, 0], [1, 2, 3], [[1, 2], [0], [2, 0]])
    edges = {(v, w) for v in range(3) for w in g.succ[v]}
    back = {(v, w) for w in range(3) for v in g.pred[w]}
    assert edges == back


def test_live_edges_grouped_by_source():
    g = build_game([1, 0], [1, 2], [[0, 1], [1]], live=[(0, 1), (0, 0)])
    assert g.live_succ[0] == [0, 1]
    assert g.live_succ[1] == []
    assert set(g.live_pred[1]) == {0}


def test_constructor_rejects_bad_input():
    with pytest.raises(ValueError):
        build_game([0], [1], [[5]])
    with pytest.raises(ValueError):
        build_game([2], [1], [[0]])
    with pytest.raises(ValueError):
        build_game([0], [-1], [[0]])


def test_validate_reports_defects():
    g = build_game([1, 0], [1, 2], [[0, 1], [1]], live=[(0, 1)])
    assert validate(g) is None
    dead = OddFairGame([0], [1], [[]])
    assert "dead end" in validate(dead)
    even_src = OddFairGame([0, 0], [1, 2], [[1], [0]], live_edges=[(0, 1)])
    assert "owned by Even" in validate(even_src)
    not_edge = OddFairGame([1, 0], [1, 2], [[1], [0]], live_edges=[(0, 0)])
    assert "not in the edge set" in validate(not_edge)


@given(st.sets(st.integers(min_value=0, max_value=15)))
def test_region_roundtrip_and_complement(members):
    r = Region.of(16, members)
    assert set(r) == members
    assert len(r) == len(members)
    assert set(r.complement()) == set(range(16)) - members
    assert r.complement().complement() == r


@given(
    st.sets(st.integers(min_value=0, max_value=11)),
    st.sets(st.integers(min_value=0, max_value=11)),
)
def test_region_algebra_matches_set_algebra(a, b):
    ra, rb = Region.of(12, a), Region.of(12, b)
    assert set(ra | rb) == a | b
    assert set(ra & rb) == a & b
    assert set(ra - rb) == a - b
    assert ra.issubset(rb) == (a <= b)
    assert ra.isdisjoint(rb) == (not a & b)


def test_region_universe_mismatch_raises():
    with pytest.raises(ValueError):
        Region.of(3, [0]) | Region.of(4, [0])
    with pytest.raises(ValueError):
        Region.of(3, [3])


def test_subgame_view_rejects_dead_ends():
    g = build_game([0, 1], [1, 2], [[1], [0, 1]])
    SubgameView(g, Region.of(2, [1]))  # 1 has the self loop
    with pytest.raises(ValueError, match="dead end"):
        SubgameView(g, Region.of(2, [0]))


def test_subgame_view_player_vertices(ex1):
    view = SubgameView.full(ex1)
    assert set(view.vertices(EVEN)) == {0, 1, 4}
    assert set(view.vertices(ODD)) == {2, 3, 5, 6}
    assert view.vertices() == view.active


def test_least_even_upperbound(ex1):
    assert least_even_upperbound(ex1) == 4
    assert least_even_upperbound(ex1, Region.of(ex1.n, [0, 4])) == 4
    assert least_even_upperbound(ex1, Region.of(ex1.n, [0])) == 2
    tiny = build_game([0], [1], [[0]])
    assert least_even_upperbound(tiny) == 2


def test_priority_class(ex1):
    names = ex1.names
    c2 = {names[v] for v in priority_class(ex1, 2)}
    assert c2 == {"2a", "2b", "2c"}
    assert set(priority_class(ex1, 4)) == {6}
    assert not priority_class(ex1, 5)
