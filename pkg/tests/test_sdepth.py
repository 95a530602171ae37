import pytest
from hypothesis import given, settings, strategies as st

from clutterdepth import sdepth as sd
from clutterdepth.clutter import Clutter, minimalize, permute_set, vset
from clutterdepth.ideal import SquarefreeIdeal, alexander_dual, edge_ideal
from clutterdepth.instances import all_clutters
from clutterdepth.sdepth import (
    BudgetExceeded,
    Mode,
    Status,
    brute_oracle_sdepth,
    brute_oracle_sreg,
    char_poset,
    default_budget,
    sdepth_decision,
    stanley_depth,
    stanley_regularity,
)
from conftest import nonzero_ideals, seeded_ideals

MAXIMAL3 = SquarefreeIdeal.from_lists(3, [[1], [2], [3]])


def S(*vs):
    return vset(vs)


def test_char_poset_members():
    I = SquarefreeIdeal.from_lists(2, [[1, 2]])
    assert char_poset(I, Mode.IDEAL).elements() == [S(1, 2)]
    assert char_poset(I, "quotient").elements() == [0, S(1), S(2)]
    assert len(char_poset(MAXIMAL3, Mode.IDEAL)) == 7


def test_char_poset_guards():
    with pytest.raises(ValueError):
        char_poset(SquarefreeIdeal(3, ()), Mode.IDEAL)
    with pytest.raises(ValueError):
        char_poset(MAXIMAL3, "sideways")


def test_decision_witness_on_maximal_ideal():
    P = char_poset(MAXIMAL3, Mode.IDEAL)
    part = sdepth_decision(P, 2)
    assert part.intervals == (
        (S(1), S(1, 2)), (S(2), S(2, 3)), (S(3), S(1, 3)), (S(1, 2, 3), S(1, 2, 3)),
    )
    assert sdepth_decision(P, 3) is None


def test_decision_at_zero_is_singletons():
    P = char_poset(SquarefreeIdeal.from_lists(3, [[1, 2], [3]]), Mode.QUOTIENT)
    part = sdepth_decision(P, 0)
    assert all(a == b for a, b in part.intervals)
    assert len(part.intervals) == len(P)


def test_decision_rejects_bad_target():
    with pytest.raises(ValueError):
        sdepth_decision(char_poset(MAXIMAL3, Mode.IDEAL), 4)


@pytest.mark.parametrize("gens,n,mode,expected", [
    ([[1, 2, 3]], 3, Mode.IDEAL, 3),
    ([[2], [1, 3]], 3, Mode.IDEAL, 2),
    ([[1], [2], [3]], 3, Mode.IDEAL, 2),
    ([[1, 2]], 2, Mode.QUOTIENT, 1),
    ([[1], [2], [3], [4], [5]], 5, Mode.IDEAL, 3),
])
def test_stanley_depth_examples(gens, n, mode, expected):
    res = stanley_depth(SquarefreeIdeal.from_lists(n, gens), mode)
    assert res.exact and res.value == expected


def test_oracle_examples_and_guards():
    assert brute_oracle_sdepth(SquarefreeIdeal.from_lists(2, [[1, 2]]), Mode.QUOTIENT) == 1
    with pytest.raises(ValueError):
        brute_oracle_sdepth(SquarefreeIdeal(3, ()), Mode.QUOTIENT)
    with pytest.raises(ValueError):
        brute_oracle_sdepth(SquarefreeIdeal.from_lists(6, [[1]]), Mode.IDEAL)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_disjoint_edges_sreg(m):
    C = Clutter.from_lists(2 * m, [[2 * k + 1, 2 * k + 2] for k in range(m)])
    assert stanley_regularity(edge_ideal(C), Mode.QUOTIENT).value == (m + 1) // 2


def test_prime_ideal_has_zero_sreg():
    assert stanley_regularity(SquarefreeIdeal.from_lists(2, [[1], [2]]), Mode.QUOTIENT).value == 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_principal_quotient_sreg(n):
    I = SquarefreeIdeal.from_lists(n, [list(range(1, n + 1))])
    assert stanley_regularity(I, Mode.QUOTIENT).value == n // 2


def test_exhaustive_agreement_with_oracle_n3():
    for C in all_clutters(3, include_edgeless=False):
        I = edge_ideal(C)
        for mode in Mode:
            assert stanley_depth(I, mode).value == brute_oracle_sdepth(I, mode)


@given(nonzero_ideals(max_n=5), st.sampled_from(list(Mode)))
@settings(max_examples=80, deadline=None)
def test_agrees_with_oracle(I, mode):
    res = stanley_depth(I, mode)
    assert res.value == brute_oracle_sdepth(I, mode)
    res.partition.check(char_poset(I, mode))


@given(nonzero_ideals(max_n=5), st.sampled_from(list(Mode)))
@settings(max_examples=60, deadline=None)
def test_sreg_via_dual_matches_direct_oracle(I, mode):
    assert stanley_regularity(I, mode).value == brute_oracle_sreg(I, mode)


@given(nonzero_ideals(max_n=5), st.sampled_from(list(Mode)))
@settings(max_examples=60, deadline=None)
def test_decision_monotone(I, mode):
    P = char_poset(I, mode)
    best = stanley_depth(I, mode).value
    for d in range(P.n + 1):
        assert (sdepth_decision(P, d) is not None) == (d <= best)


@given(nonzero_ideals(max_n=5))
@settings(max_examples=60, deadline=None)
def test_principal_iff_full_sdepth(I):
    assert (stanley_depth(I, Mode.IDEAL).value == I.n) == I.is_principal()


@given(nonzero_ideals(max_n=4), st.sampled_from(list(Mode)))
@settings(max_examples=50, deadline=None)
def test_isolated_variable_shifts_depth(I, mode):
    bigger = SquarefreeIdeal(I.n + 1, I.gens)
    assert stanley_depth(bigger, mode).value == stanley_depth(I, mode).value + 1


@given(nonzero_ideals(max_n=5), st.sampled_from(list(Mode)), st.randoms())
@settings(max_examples=50, deadline=None)
def test_relabel_invariance(I, mode, rnd):
    perm = list(range(1, I.n + 1))
    rnd.shuffle(perm)
    J = SquarefreeIdeal(I.n, minimalize(permute_set(g, perm) for g in I.gens))
    assert stanley_depth(J, mode).value == stanley_depth(I, mode).value


@given(nonzero_ideals(max_n=5))
@settings(max_examples=50, deadline=None)
def test_sreg_and_dual_depth(I):
    assert stanley_regularity(I, Mode.QUOTIENT).value == I.n - stanley_depth(alexander_dual(I), Mode.IDEAL).value
    assert stanley_regularity(I, Mode.IDEAL).value == I.n - stanley_depth(alexander_dual(I), Mode.QUOTIENT).value


@pytest.mark.parametrize("first,cover", [(1, 10**9), (1, 1)])
def test_later_stages_agree_with_oracle(monkeypatch, first, cover):
    # shrink the stage caps so the exact-cover and 0/1-program stages decide
    monkeypatch.setattr(sd, "FIRST_PASS_NODES", first)
    monkeypatch.setattr(sd, "COVER_PASS_NODES", cover)
    calls = []
    real_milp = sd._milp_search
    monkeypatch.setattr(sd, "_milp_search", lambda *a: calls.append(1) or real_milp(*a))
    for I in seeded_ideals(11, 25, 3, 5):
        for mode in Mode:
            res = stanley_depth(I, mode)
            assert res.value == brute_oracle_sdepth(I, mode)
    assert bool(calls) == (cover == 1)


def test_budget_gives_indeterminate():
    I = edge_ideal(Clutter.from_lists(6, [[1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [1, 6]]))
    res = stanley_depth(I, Mode.IDEAL, budget=1)
    assert res.status is Status.INDETERMINATE and res.value is None
    assert stanley_regularity(I, Mode.QUOTIENT, budget=1).status is Status.INDETERMINATE
    with pytest.raises(BudgetExceeded):
        sdepth_decision(char_poset(I, Mode.IDEAL), 3, budget=1)


def test_budget_from_environment(monkeypatch):
    monkeypatch.delenv(sd.BUDGET_ENV, raising=False)
    assert default_budget() is None
    monkeypatch.setenv(sd.BUDGET_ENV, "500")
    assert default_budget() == 500
