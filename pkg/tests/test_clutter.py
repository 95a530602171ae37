import pytest
from hypothesis import given, strategies as st

from clutterdepth.clutter import (
    Clutter,
    add_set,
    contract,
    embed,
    free_vertex_edges,
    is_antichain,
    members,
    minimalize,
    neighbors,
    reduce,
    relabel,
    vset,
)
from conftest import clutters


def test_vset_roundtrip():
    assert vset([1, 3]) == 0b101
    assert members(0b1101) == (1, 3, 4)


def test_rejects_non_antichain():
    with pytest.raises(ValueError):
        Clutter.from_lists(3, [[1], [1, 2]])
    C = Clutter.from_lists(3, [[1], [1, 2], [2, 3]], minimal=True)
    assert C.edge_lists() == [[1], [2, 3]]


def test_rejects_bad_edges():
    with pytest.raises(ValueError):
        Clutter.from_lists(2, [[1, 3]])
    with pytest.raises(ValueError):
        Clutter(3, (0,))


def test_canonical_edge_order():
    C = Clutter.from_lists(4, [[3, 4], [1], [2, 3]])
    assert C.edge_lists() == [[1], [2, 3], [3, 4]]


def test_reduce_drops_isolated():
    C = Clutter.from_lists(5, [[2, 4], [4, 5]])
    red = reduce(C)
    assert red.clutter.n == 3
    assert red.clutter.edge_lists() == [[1, 2], [2, 3]]
    assert red.vertex_map == (2, 4, 5)
    assert members(red.isolated) == (1, 3)


def test_add_set_keeps_minimal():
    C = Clutter.from_lists(3, [[1, 2], [2, 3]])
    assert add_set(C, vset([2])).edge_lists() == [[2]]
    assert add_set(C, vset([1, 2, 3])) == C


def test_contract():
    C = Clutter.from_lists(4, [[1, 2], [2, 3], [3, 4]])
    res = contract(C, vset([2]))
    assert not res.improper
    assert res.vertex_map == (1, 3, 4)
    assert res.clutter.edge_lists() == [[1], [2]]
    assert contract(C, vset([1, 2])).improper


def test_neighbors_and_free_vertices():
    C = Clutter.from_lists(4, [[1, 2], [2, 3], [3, 4]])
    assert members(neighbors(C, 2)) == (1, 3)
    assert free_vertex_edges(C) == [0, 2]


@given(clutters())
def test_edges_form_antichain(C):
    assert is_antichain(C.edges)


@given(st.lists(st.integers(1, 63), max_size=8))
def test_minimalize_idempotent(sets):
    once = minimalize(sets)
    assert minimalize(once) == once
    assert is_antichain(list(once))


@given(clutters())
def test_reduce_idempotent(C):
    red = reduce(C).clutter
    again = reduce(red)
    assert again.clutter == red
    assert again.isolated == 0


@given(clutters(min_edges=1), st.data())
def test_contraction_edges_avoid_the_set(C, data):
    A = data.draw(st.integers(1, (1 << C.n) - 1))
    res = contract(C, A)
    if not res.improper:
        assert res.clutter.n == C.n - len(members(A))
        assert is_antichain(res.clutter.edges)


@given(clutters(), st.randoms())
def test_relabel_preserves_shape(C, rnd):
    perm = list(range(1, C.n + 1))
    rnd.shuffle(perm)
    D = relabel(C, perm)
    assert sorted(len(e) for e in D.edge_lists()) == sorted(len(e) for e in C.edge_lists())
    inverse = [0] * C.n
    for i, p in enumerate(perm, 1):
        inverse[p - 1] = i
    assert relabel(D, inverse) == C


def test_embed_adds_isolated_vertices():
    C = Clutter.from_lists(2, [[1, 2]])
    assert embed(C, 2).n == 4
    assert reduce(embed(C, 2)).clutter == C
