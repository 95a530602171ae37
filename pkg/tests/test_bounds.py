from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings

from clutterdepth.bounds import (
    FAIL,
    INFORMATIVE,
    PASS,
    SKIPPED,
    ReportOptions,
    bound_report,
    clique_partition_number,
    cochord,
    ds_bound,
    edgewise_domination_index,
    evaluate_verdicts,
    induced_matching,
    is_chordal,
    is_cochordal,
    is_two_collage,
    lm_bound,
    matching_numbers,
    maximal_cliques,
    min_two_collage,
    subadditivity_report,
)
from clutterdepth.clutter import Clutter, members, popcount, reduce
from clutterdepth.ideal import edge_ideal
from conftest import clutters, graphs


def G(n, edges):
    return Clutter.from_lists(n, edges)


def to_nx(C):
    g = nx.Graph()
    g.add_nodes_from(range(1, C.n + 1))
    g.add_edges_from(tuple(e) for e in C.edge_lists())
    return g


def disjoint_edges(m):
    return G(2 * m, [[2 * k + 1, 2 * k + 2] for k in range(m)])


# -- brute-force oracles, written straight from the definitions ------------


def oracle_matchings(C):
    edges = C.edges
    matchings = [s for k in range(len(edges) + 1) for s in combinations(edges, k)
                 if all(a & b == 0 for a, b in combinations(s, 2))]
    maximal = [s for s in matchings if all(any(e & f for f in s) for e in edges)]
    return max(len(s) for s in matchings), min(len(s) for s in maximal)


def oracle_epsilon(C):
    red = reduce(C).clutter
    trivial = 0
    for e in red.edges:
        if popcount(e) == 1:
            trivial |= e

    def nbrs(v):
        out = 0
        for e in red.edges:
            if e >> (v - 1) & 1:
                out |= e
        return out & ~(1 << (v - 1))

    for k in range(len(red.edges) + 1):
        for F in combinations(red.edges, k):
            inside = 0
            for f in F:
                inside |= f
            if all(inside >> (v - 1) & 1 or trivial >> (v - 1) & 1 or nbrs(v) & inside
                   for v in range(1, red.n + 1)):
                return k
    raise AssertionError("all edges always dominate")


def oracle_indmatch(C):
    best = 0
    for k in range(1, len(C.edges) + 1):
        for M in combinations(C.edges, k):
            if any(a & b for a, b in combinations(M, 2)):
                continue
            verts = 0
            for e in M:
                verts |= e
            if sum(1 for e in C.edges if e & verts == e) == k:
                best = k
    return best


def oracle_cochord(C):
    edges = C.edge_lists()
    for k in range(1, len(edges) + 1):
        for colors in product(range(k), repeat=len(edges)):
            ok = True
            for c in range(k):
                part = [e for e, col in zip(edges, colors) if col == c]
                if part and not nx.is_chordal(nx.complement(to_nx(G(C.n, part)))):
                    ok = False
                    break
            if ok:
                return k
    return 0


def oracle_collage(C):
    best = None
    for k in range(1, len(C.edges) + 1):
        for chosen in combinations(C.edges, k):
            good = all(any(set(members(e)) - {v} <= set(members(f)) for v in members(e) for f in chosen)
                       for e in C.edges)
            if good:
                w = sum(popcount(e) - 1 for e in chosen)
                best = w if best is None else min(best, w)
    return best


# -- worked examples -------------------------------------------------------


def test_epsilon_examples():
    assert edgewise_domination_index(G(2, [[1, 2]])) == 1
    assert edgewise_domination_index(G(3, [[1, 2], [2, 3]])) == 1
    assert edgewise_domination_index(disjoint_edges(2)) == 2
    with pytest.raises(ValueError):
        edgewise_domination_index(Clutter(3, ()))


def test_matching_examples():
    assert matching_numbers(disjoint_edges(3)) == (3, 3)
    assert matching_numbers(G(4, [[1, 2], [2, 3], [3, 4]])) == (2, 1)
    assert matching_numbers(G(3, [[1, 2], [2, 3], [1, 3]])) == (1, 1)
    assert matching_numbers(Clutter(2, ())) == (0, 0)


def test_induced_matching_examples():
    assert induced_matching(disjoint_edges(2)) == 2
    assert induced_matching(G(3, [[1, 2], [2, 3]])) == 1
    K4 = G(4, [list(e) for e in combinations(range(1, 5), 2)])
    assert induced_matching(K4) == 1
    with pytest.raises(ValueError):
        induced_matching(G(3, [[1, 2, 3]]))


def test_cochord_examples():
    C4 = G(4, [[1, 2], [2, 3], [3, 4], [1, 4]])
    C5 = G(5, [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]])
    P4 = G(4, [[1, 2], [2, 3], [3, 4]])
    assert is_cochordal(C4) and cochord(C4).value == 1
    assert cochord(C5).value == 2 and cochord(C5).exact
    assert cochord(P4).value == 1
    assert not is_chordal(C4) and is_chordal(P4)


def test_collage_examples():
    assert min_two_collage(G(3, [[1, 2, 3]]))[0] == 2
    weight, witness = min_two_collage(G(4, [[1, 2, 3], [1, 2, 4]]))
    assert weight == 2 and len(witness) == 1
    assert min_two_collage(disjoint_edges(3))[0] == 3


def test_composite_bound_examples():
    for m in (1, 2, 3):
        assert lm_bound(disjoint_edges(m)) == m
    assert lm_bound(G(3, [[1, 2], [2, 3]])) == 1
    assert ds_bound(disjoint_edges(2)) == 2


def test_maximal_cliques_and_partition():
    g = G(5, [[1, 2], [2, 3], [1, 3], [3, 4], [4, 5]])
    cliques = sorted(members(c) for c in maximal_cliques(g))
    assert cliques == [(1, 2, 3), (3, 4), (4, 5)]
    assert clique_partition_number(g) == 2


# -- properties against the oracles ---------------------------------------


@given(clutters(max_n=5))
@settings(max_examples=100, deadline=None)
def test_matchings_match_oracle(C):
    if C.edges:
        assert matching_numbers(C) == oracle_matchings(C)


@given(clutters(max_n=5, min_edges=1))
@settings(max_examples=100, deadline=None)
def test_epsilon_matches_oracle(C):
    expected = oracle_epsilon(C)
    if all(popcount(e) == 1 for e in C.edges):
        expected = 0
    assert edgewise_domination_index(C) == expected


@given(graphs(max_n=7))
@settings(max_examples=100, deadline=None)
def test_induced_matching_matches_oracle(g):
    assert induced_matching(g) == oracle_indmatch(g)


@given(graphs(max_n=7))
@settings(max_examples=100, deadline=None)
def test_chordality_matches_networkx(g):
    assert is_chordal(g) == nx.is_chordal(to_nx(g))
    assert is_cochordal(g) == nx.is_chordal(nx.complement(to_nx(g)))


@given(graphs(max_n=6))
@settings(max_examples=40, deadline=None)
def test_cochord_matches_oracle(g):
    if len(g.edges) > 7:
        return
    res = cochord(g)
    assert res.exact and res.value == oracle_cochord(g)


def test_cochord_beyond_exact_range_is_bracketed():
    K6 = G(6, [list(e) for e in combinations(range(1, 7), 2)])
    res = cochord(K6)
    assert not res.exact
    assert 1 <= res.lower <= res.value


@given(clutters(max_n=5, min_edges=1))
@settings(max_examples=100, deadline=None)
def test_collage_matches_oracle(C):
    weight, witness = min_two_collage(C)
    assert is_two_collage(C, witness)
    assert weight == sum(popcount(e) - 1 for e in witness)
    assert weight == oracle_collage(C)


# -- reports ---------------------------------------------------------------


def test_two_k2_report():
    rep = bound_report(disjoint_edges(2), instance_id="2k2")
    assert not rep.failures()
    assert rep.values["sreg_quot"] == 1 and rep.values["reg_quot"] == 2
    assert rep.values["indmatch"] == 2
    assert rep.gaps["reg_minus_sreg"] == 1
    assert rep.verdicts["sreg_quot_le_cosize"] == PASS


def test_single_edge_report():
    rep = bound_report(G(2, [[1, 2]]))
    assert rep.values["sreg_quot"] == 1 and rep.values["cosize"] == 1
    assert rep.verdicts["sreg_quot_le_cosize"] == PASS


def test_trivial_edges_report():
    rep = bound_report(G(3, [[1], [2], [3]]))
    assert rep.values["sreg_quot"] == 0
    assert rep.verdicts["sreg_quot_zero_iff_all_trivial"] == PASS
    assert rep.verdicts["depth_quot_ge_domination_bound"] == INFORMATIVE


def test_edgeless_report():
    rep = bound_report(Clutter(3, ()))
    assert set(rep.verdicts.values()) == {INFORMATIVE}


def test_budget_propagates_as_skipped():
    C5 = G(5, [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]])
    rep = bound_report(C5, ReportOptions(budget=1))
    assert SKIPPED in rep.verdicts.values()
    assert FAIL not in rep.verdicts.values()


def test_witnesses_are_included_on_request():
    rep = bound_report(G(3, [[1, 2], [2, 3]]), ReportOptions(witnesses=True))
    assert {"collage", "sdepth_quot", "sdepth_ideal"} <= set(rep.witnesses)
    assert "witnesses" in rep.to_record()


@given(clutters(max_n=4))
@settings(max_examples=60, deadline=None)
def test_verdicts_recomputable_from_values(C):
    rep = bound_report(C)
    assert evaluate_verdicts(rep.values) == rep.verdicts
    assert not rep.failures()


def test_subadditivity_report():
    a = edge_ideal(G(4, [[1, 2]]))
    b = edge_ideal(G(4, [[3, 4]]))
    rep = subadditivity_report(a, b)
    assert rep["values"]["sreg_quot_sum"] == 1
    assert set(rep["verdicts"].values()) == {PASS}
    with pytest.raises(ValueError):
        subadditivity_report(a, edge_ideal(Clutter(4, ())))
