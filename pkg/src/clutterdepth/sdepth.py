"""Stanley depth and Stanley regularity via interval partitions.

The squarefree part of ``I`` (or of ``S/I``) is a subset of the Boolean
lattice on ``[n]``.  A partition of it into intervals ``[A, B]`` is a
Stanley decomposition ``⊕ x^A K[x_B]``; the Stanley depth is the best
achievable ``min |B|`` and the Stanley regularity of the dual module is
``n`` minus that.

To decide ``sdepth >= d`` it is enough to cover the elements of rank ``< d``
by intervals whose top has rank exactly ``d``; elements of rank ``>= d`` left
over become singletons.

Before searching, the rank-count condition is checked on the poset's
restriction to every lower and upper Boolean interval, which settles most
infeasible targets outright.  The first search visits uncovered elements
lowest rank first, so the current element is always the bottom of its
interval.  If it runs long, an exact-cover search that always branches on the
element with the fewest remaining intervals takes over, and past its own cap
the same cover tables go to a 0/1 program solver.  Every returned partition
is checked before it leaves this module.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional

import numpy as np

from . import kernels
from .clutter import full_set, lex_key, members, popcount
from .ideal import SquarefreeIdeal, alexander_dual, membership_table

BUDGET_ENV = "CLUTTERDEPTH_BUDGET"


class Mode(str, enum.Enum):
    IDEAL = "ideal"
    QUOTIENT = "quotient"


class Status(str, enum.Enum):
    EXACT = "exact"
    INDETERMINATE = "indeterminate"


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search node budget exhausted after {nodes} nodes")
        self.nodes = nodes


def default_budget() -> Optional[int]:
    """Node budget from ``CLUTTERDEPTH_BUDGET``; unset or negative means unlimited."""
    raw = os.environ.get(BUDGET_ENV, "").strip()
    if not raw:
        return None
    value = int(raw)
    return None if value < 0 else value


@dataclass(frozen=True)
class CharPoset:
    """Squarefree supports inside ``I`` (ideal mode) or outside it (quotient mode)."""

    n: int
    mode: Mode
    member: np.ndarray  # uint8 flags over all 2**n supports
    ranks: tuple[tuple[int, ...], ...]  # members by cardinality, lex ordered

    def __contains__(self, sigma: int) -> bool:
        return bool(self.member[sigma])

    def __len__(self) -> int:
        return sum(len(r) for r in self.ranks)

    def elements(self) -> list[int]:
        return [s for r in self.ranks for s in r]

    def maximal(self) -> list[int]:
        out = []
        for s in self.elements():
            if not any(self.member[s | (1 << j)] for j in range(self.n) if not s >> j & 1):
                out.append(s)
        return out

    def rank_bound(self) -> int:
        """``min |B|`` over maximal members: no partition can beat it."""
        return min(popcount(s) for s in self.maximal())


def char_poset(I: SquarefreeIdeal, mode: Mode | str) -> CharPoset:
    mode = Mode(mode)
    if mode is Mode.IDEAL and I.is_zero:
        raise ValueError("the zero ideal has an empty characteristic poset")
    table = membership_table(I)
    if mode is Mode.QUOTIENT:
        table = ~table
    member = table.astype(np.uint8)
    by_rank: list[list[int]] = [[] for _ in range(I.n + 1)]
    for s in np.flatnonzero(table):
        s = int(s)
        by_rank[popcount(s)].append(s)
    ranks = tuple(tuple(sorted(r, key=lex_key)) for r in by_rank)
    P = CharPoset(I.n, mode, member, ranks)
    _check_closure(P)
    return P


def _check_closure(P: CharPoset) -> None:
    up = P.mode is Mode.IDEAL
    for s in P.elements():
        for j in range(P.n):
            bit = 1 << j
            if up and not s & bit and not P.member[s | bit]:
                raise AssertionError("ideal poset is not upward closed")
            if not up and s & bit and not P.member[s & ~bit]:
                raise AssertionError("quotient poset is not downward closed")


@dataclass(frozen=True)
class IntervalPartition:
    intervals: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return min(popcount(b) for _, b in self.intervals)

    @property
    def max_bottom(self) -> int:
        return max(popcount(a) for a, _ in self.intervals)

    def interval_lists(self) -> list[list[list[int]]]:
        return [[list(members(a)), list(members(b))] for a, b in self.intervals]

    def check(self, P: CharPoset) -> None:
        """Raise unless the intervals are disjoint, inside ``P`` and cover it."""
        seen = np.zeros(1 << P.n, dtype=bool)
        for a, b in self.intervals:
            if a & b != a:
                raise AssertionError(f"bottom {members(a)} not below top {members(b)}")
            diff = a ^ b
            t = diff
            while True:
                e = a | t
                if not P.member[e]:
                    raise AssertionError(f"interval leaves the poset at {members(e)}")
                if seen[e]:
                    raise AssertionError(f"intervals overlap at {members(e)}")
                seen[e] = True
                if t == 0:
                    break
                t = (t - 1) & diff
        if not np.array_equal(seen, P.member.astype(bool)):
            raise AssertionError("intervals do not cover the poset")


def _search_tables(P: CharPoset, d: int):
    order: list[int] = []
    offsets = [0]
    cand: list[int] = []
    top = full_set(P.n)
    for r in range(min(d, P.n + 1)):
        for s in P.ranks[r]:
            order.append(s)
            free = members(top & ~s)
            tops = []
            for extra in combinations(free, d - r):
                b = s
                for v in extra:
                    b |= 1 << (v - 1)
                if P.member[b]:
                    tops.append(b)
            tops.sort(key=lex_key)
            cand.extend(tops)
            offsets.append(len(cand))
    as_i32 = lambda xs: np.asarray(xs, dtype=np.int32)
    return as_i32(order), as_i32(offsets), as_i32(cand)


def sdepth_decision(P: CharPoset, d: int, budget: Optional[int] = None) -> Optional[IntervalPartition]:
    """A partition of ``P`` with every top of size ``>= d``, or ``None`` if none exists.

    Raises :class:`BudgetExceeded` when more than ``budget`` intervals get placed.
    """
    return _decide(P, d, budget)[0]


# node caps for the first two stages; whatever budget is left goes to the 0/1 program
FIRST_PASS_NODES = 20_000
COVER_PASS_NODES = 50_000
# skip the table-based stages when the option table would hold more item entries than this
COVER_TABLE_LIMIT = 4_000_000


def _cover_tables(P: CharPoset, d: int):
    """Exact-cover form: ranks ``< d`` are primary items, rank ``d`` secondary,
    and every interval ``[a, B]`` with ``|B| = d`` is an option."""
    index = {}
    for r in range(d + 1):
        for s in P.ranks[r]:
            index[s] = len(index) + 1
    nprimary = sum(len(P.ranks[r]) for r in range(d))
    intervals = []
    offsets = [0]
    items: list[int] = []
    for top in P.ranks[d]:
        bottoms = []
        t = top
        while True:
            if popcount(t) < d and P.member[t]:
                bottoms.append(t)
            if t == 0:
                break
            t = (t - 1) & top
        bottoms.sort(key=lambda a: (popcount(a), lex_key(a)))
        for a in bottoms:
            diff = a ^ top
            t = diff
            while True:
                items.append(index[a | t])
                if t == 0:
                    break
                t = (t - 1) & diff
            offsets.append(len(items))
            intervals.append((a, top))
    as_i32 = lambda xs: np.asarray(xs, dtype=np.int32)
    return nprimary, len(index), as_i32(offsets), as_i32(items), intervals


def _cover_size_estimate(P: CharPoset, d: int) -> int:
    return len(P.ranks[d]) * 3**d


def _remaining(budget: Optional[int], spent: int) -> Optional[int]:
    return None if budget is None else budget - spent


def _capped(cap: int, left: Optional[int]) -> int:
    return cap if left is None else min(cap, left)


def _milp_search(nprimary, nitems, opt_off, opt_items, node_limit: Optional[int]):
    """Feasibility of the exact-cover tables as a 0/1 program (HiGHS)."""
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import csr_matrix

    nopt = len(opt_off) - 1
    cols = np.repeat(np.arange(nopt), np.diff(opt_off))
    A = csr_matrix((np.ones(len(opt_items)), (np.asarray(opt_items) - 1, cols)), shape=(nitems, nopt))
    lower = np.r_[np.ones(nprimary), np.zeros(nitems - nprimary)]
    options = {"presolve": True}
    if node_limit is not None:
        options["node_limit"] = max(1, node_limit)
    res = milp(np.zeros(nopt), constraints=LinearConstraint(A, lower, np.ones(nitems)),
               integrality=np.ones(nopt), bounds=Bounds(0, 1), options=options)
    nodes = max(1, int(getattr(res, "mip_node_count", 1) or 1))
    if res.status == 0:
        return kernels.FOUND, nodes, [int(k) for k in np.flatnonzero(res.x > 0.5)]
    if res.status == 2:
        return kernels.EXHAUSTED, nodes, []
    return kernels.OVER_BUDGET, nodes, []


def _decide(P: CharPoset, d: int, budget: Optional[int]) -> tuple[Optional[IntervalPartition], int]:
    """Staged decision: count tests, lowest-rank-first search, exact cover, then a 0/1 program."""
    if not 0 <= d <= P.n:
        raise ValueError(f"target {d} outside 0..{P.n}")
    if d > 0 and not kernels.local_counts_feasible(P.member, P.n, d):
        return None, 0
    order, offsets, cand = _search_tables(P, d)
    left = _remaining(budget, 0)
    status, nodes, chosen = kernels.interval_search(
        P.member, P.n, d, order, offsets, cand, _capped(FIRST_PASS_NODES, left)
    )
    if status == kernels.OVER_BUDGET and (left is None or left > FIRST_PASS_NODES):
        left = _remaining(budget, nodes)
        if _cover_size_estimate(P, d) <= COVER_TABLE_LIMIT:
            tables = _cover_tables(P, d)
            nprimary, nitems, opt_off, opt_items, intervals = tables
            status, more, picked = kernels.exact_cover(
                nprimary, nitems, opt_off, opt_items, _capped(COVER_PASS_NODES, left)
            )
            nodes += more
            left = _remaining(budget, nodes)
            if status == kernels.OVER_BUDGET and (left is None or left > 0):
                status, more, picked = _milp_search(nprimary, nitems, opt_off, opt_items, left)
                nodes += more
            chosen = [intervals[k] for k in picked]
        else:
            status, more, chosen = kernels.interval_search(
                P.member, P.n, d, order, offsets, cand, -1 if left is None else left
            )
            nodes += more
    if status == kernels.OVER_BUDGET or (budget is not None and nodes > budget):
        raise BudgetExceeded(nodes)
    if status == kernels.EXHAUSTED:
        return None, nodes
    used = np.zeros(1 << P.n, dtype=bool)
    intervals = [(int(a), int(b)) for a, b in chosen]
    for a, b in intervals:
        diff = a ^ b
        t = diff
        while True:
            if used[a | t]:
                raise AssertionError("decision stages returned overlapping intervals")
            used[a | t] = True
            if t == 0:
                break
            t = (t - 1) & diff
    for r in range(d, P.n + 1):
        for s in P.ranks[r]:
            if not used[s]:
                intervals.append((s, s))
    intervals.sort(key=lambda ab: (popcount(ab[0]), lex_key(ab[0])))
    part = IntervalPartition(tuple(intervals))
    part.check(P)
    return part, nodes


@dataclass
class SdepthResult:
    value: Optional[int]
    status: Status
    partition: Optional[IntervalPartition] = None
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.status is Status.EXACT


def stanley_depth(I: SquarefreeIdeal, mode: Mode | str, budget: Optional[int] = None) -> SdepthResult:
    """Exact Stanley depth of ``I`` or ``S/I`` by descent from the rank bound."""
    P = char_poset(I, mode)
    spent = 0
    for d in range(P.rank_bound(), -1, -1):
        left = None if budget is None else budget - spent
        try:
            part, nodes = _decide(P, d, left)
        except BudgetExceeded as exc:
            return SdepthResult(None, Status.INDETERMINATE, None, spent + exc.nodes)
        spent += nodes
        if part is not None:
            return SdepthResult(part.value, Status.EXACT, part, spent)
    raise AssertionError("the all-singleton partition always exists")


@dataclass
class SregResult:
    value: Optional[int]
    status: Status
    dual_result: SdepthResult = field(repr=False, default=None)

    @property
    def exact(self) -> bool:
        return self.status is Status.EXACT


def stanley_regularity(I: SquarefreeIdeal, mode: Mode | str, budget: Optional[int] = None) -> SregResult:
    """``sreg(S/I) = n - sdepth(I^v)`` and ``sreg(I) = n - sdepth(S/I^v)``."""
    mode = Mode(mode)
    dual = alexander_dual(I)
    other = Mode.IDEAL if mode is Mode.QUOTIENT else Mode.QUOTIENT
    res = stanley_depth(dual, other, budget)
    if not res.exact:
        return SregResult(None, res.status, res)
    return SregResult(I.n - res.value, Status.EXACT, res)


# -- independent oracles ---------------------------------------------------

ORACLE_MAX_N = 5


def _oracle_setup(I: SquarefreeIdeal, mode: Mode | str):
    mode = Mode(mode)
    if I.n > ORACLE_MAX_N:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX_N}")
    if I.is_zero:
        raise ValueError("oracle needs at least one generator")
    inside = [I.contains(s) for s in range(1 << I.n)]
    if mode is Mode.QUOTIENT:
        inside = [not x for x in inside]
    elems = sorted((s for s in range(1 << I.n) if inside[s]), key=lambda s: (popcount(s), lex_key(s)))
    index = {s: i for i, s in enumerate(elems)}
    return elems, index


def _all_intervals(elems, index):
    """For each element, every interval of the poset having it as bottom, as element bitmasks."""
    out = []
    for a in elems:
        here = []
        for b in elems:
            if b & a != a:
                continue
            diff = a ^ b
            mask = 0
            t = diff
            while True:
                i = index.get(a | t)
                if i is None:
                    mask = None
                    break
                mask |= 1 << i
                if t == 0:
                    break
                t = (t - 1) & diff
            if mask is not None:
                here.append((a, b, mask))
        out.append(here)
    return out


def brute_oracle_sdepth(I: SquarefreeIdeal, mode: Mode | str) -> int:
    """Maximum of ``min |B|`` over every interval partition (n <= 5 only)."""
    elems, index = _oracle_setup(I, mode)
    table = _all_intervals(elems, index)
    none_left = I.n + 1

    @lru_cache(maxsize=None)
    def best(remaining: int) -> int:
        if remaining == 0:
            return none_left
        low = (remaining & -remaining).bit_length() - 1
        out = -1
        for _, b, mask in table[low]:
            if mask & remaining == mask:
                out = max(out, min(popcount(b), best(remaining & ~mask)))
        return out

    return best((1 << len(elems)) - 1)


def brute_oracle_sreg(I: SquarefreeIdeal, mode: Mode | str) -> int:
    """Minimum of ``max |A|`` over every interval partition of the poset of ``I`` or ``S/I``.

    This is Stanley regularity computed on the module itself, without passing
    through the Alexander dual (n <= 5 only).
    """
    elems, index = _oracle_setup(I, mode)
    table = _all_intervals(elems, index)

    @lru_cache(maxsize=None)
    def worst(remaining: int) -> int:
        if remaining == 0:
            return -1
        low = (remaining & -remaining).bit_length() - 1
        out = I.n + 1
        for a, _, mask in table[low]:
            if mask & remaining == mask:
                out = min(out, max(popcount(a), worst(remaining & ~mask)))
        return out

    return worst((1 << len(elems)) - 1)
