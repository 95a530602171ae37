"""Combinatorial bounds on (Stanley) depth and (Stanley) regularity of edge ideals.

Every search here is exact and deterministic under the canonical edge order,
except :func:`cochord` on graphs with many edges, which falls back to a
greedy upper bound and says so.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional

import numpy as np

from .clutter import (
    Clutter,
    VertexSet,
    free_vertex_edges,
    full_set,
    members,
    neighbors,
    popcount,
    reduce,
)

COCHORD_EXACT_MAX_EDGES = 12


def _require_edges(C: Clutter, what: str) -> None:
    if not C.edges:
        raise ValueError(f"{what} is undefined for a clutter without edges")


def _require_graph(G: Clutter) -> None:
    if not G.is_graph():
        raise ValueError("expected a simple graph (every edge of size 2)")


def edgewise_domination_index(C: Clutter) -> int:
    """Fewest edges ``F`` such that each vertex of the reduced clutter lies in an
    edge of ``F``, lies in a trivial edge, or has a neighbour inside ``∪F``.
    """
    _require_edges(C, "edgewise domination")
    trivial = 0
    for e in C.trivial_edges():
        trivial |= e
    needy = C.support & ~trivial
    if not needy:
        return 0
    nbr = {v: neighbors(C, v) for v in members(needy)}

    def dominant(U: int) -> bool:
        return all(nbr[v] & U for v in members(needy & ~U))

    for k in range(1, len(C.edges) + 1):
        for F in combinations(C.edges, k):
            U = 0
            for e in F:
                U |= e
            if dominant(U):
                return k
    raise AssertionError("taking every edge is always dominant")


def matching_numbers(C: Clutter) -> tuple[int, int]:
    """``(maximum matching size, minimum size of a maximal matching)``."""
    if not C.edges:
        return 0, 0
    edges = C.edges

    @lru_cache(maxsize=None)
    def biggest(avail: int) -> int:
        inside = [e for e in edges if e & avail == e]
        if not inside:
            return 0
        low = min(e & -e for e in inside)
        # either the lowest usable vertex stays unmatched, or some edge through it is used
        best = biggest(avail & ~low)
        for e in inside:
            if e & low:
                best = max(best, 1 + biggest(avail & ~e))
        return best

    @lru_cache(maxsize=None)
    def smallest_maximal(used: int) -> int:
        first = next((e for e in edges if not e & used), None)
        if first is None:
            return 0
        return 1 + min(smallest_maximal(used | f) for f in edges if not f & used and f & first)

    return biggest(C.support), smallest_maximal(0)


def induced_matching(G: Clutter) -> int:
    """Largest matching whose vertices induce no further edges."""
    _require_graph(G)
    edges = G.edges
    m = len(edges)
    if m == 0:
        return 0
    touch = []
    for e in edges:
        reach = e
        for f in edges:
            if f & e:
                reach |= f
        touch.append(reach)
    conflict = [0] * m
    for i in range(m):
        for j in range(m):
            if i != j and touch[i] & edges[j]:
                conflict[i] |= 1 << j

    @lru_cache(maxsize=None)
    def mis(cand: int) -> int:
        if not cand:
            return 0
        i = (cand & -cand).bit_length() - 1
        skip = mis(cand & ~(1 << i))
        take = 1 + mis(cand & ~(1 << i) & ~conflict[i])
        return max(skip, take)

    return mis((1 << m) - 1)


# -- graphs: chordality and co-chordal covers ------------------------------


def adjacency(n: int, edges) -> list[int]:
    adj = [0] * n
    for e in edges:
        a, b = members(e)
        adj[a - 1] |= 1 << (b - 1)
        adj[b - 1] |= 1 << (a - 1)
    return adj


def complement_adjacency(n: int, adj: list[int]) -> list[int]:
    top = full_set(n)
    return [top & ~adj[v] & ~(1 << v) for v in range(n)]


def _chordal_adj(adj: list[int], verts: int) -> bool:
    """Repeatedly delete a simplicial vertex; chordal iff this empties the graph."""
    remaining = verts
    while remaining:
        for v in members(remaining):
            bit = 1 << (v - 1)
            nb = adj[v - 1] & remaining
            if all((adj[u - 1] | 1 << (u - 1)) & nb == nb for u in members(nb)):
                remaining &= ~bit
                break
        else:
            return False
    return True


def is_chordal(G: Clutter) -> bool:
    _require_graph(G)
    return _chordal_adj(adjacency(G.n, G.edges), full_set(G.n))


def is_cochordal(G: Clutter) -> bool:
    _require_graph(G)
    adj = adjacency(G.n, G.edges)
    return _chordal_adj(complement_adjacency(G.n, adj), full_set(G.n))


@dataclass(frozen=True)
class CochordResult:
    """Co-chordal cover number; when not ``exact``, ``value`` is a greedy upper bound."""

    value: int
    exact: bool
    lower: int


def _edges_cochordal(n: int, edges) -> bool:
    return _chordal_adj(complement_adjacency(n, adjacency(n, edges)), full_set(n))


def cochord(G: Clutter) -> CochordResult:
    """Fewest co-chordal subgraphs covering the edges of ``G``."""
    _require_graph(G)
    edges = G.edges
    m = len(edges)
    if m == 0:
        return CochordResult(0, True, 0)
    # a co-chordal subgraph holds at most one edge of an induced matching
    lower = max(1, induced_matching(G))
    if m > COCHORD_EXACT_MAX_EDGES:
        return CochordResult(max(lower, _greedy_cochord(G)), False, lower)
    size = 1 << m
    good = np.zeros(size, dtype=bool)
    for mask in range(1, size):
        good[mask] = _edges_cochordal(G.n, [edges[i] for i in range(m) if mask >> i & 1])
    idx = np.arange(size)
    # down[S]: some co-chordal edge set contains S
    down = good.copy()
    down[0] = True
    for i in range(m):
        bit = 1 << i
        lo = (idx & bit) == 0
        down[idx[lo]] |= down[idx[lo] | bit]
    maximal = good.copy()
    for i in range(m):
        bit = 1 << i
        lo = (idx & bit) == 0
        maximal[idx[lo]] &= ~down[idx[lo] | bit]
    family = [int(s) for s in np.flatnonzero(maximal)]
    full = size - 1
    frontier = {0}
    k = 0
    while True:
        k += 1
        nxt = set()
        for u in frontier:
            for f in family:
                w = u | f
                if w == full:
                    return CochordResult(k, True, lower)
                nxt.add(w)
        frontier = nxt


def _greedy_cochord(G: Clutter) -> int:
    edges = list(G.edges)
    uncovered = list(edges)
    parts = 0
    while uncovered:
        chosen = [uncovered[0]]
        for e in uncovered[1:] + [e for e in edges if e not in uncovered]:
            if e not in chosen and _edges_cochordal(G.n, chosen + [e]):
                chosen.append(e)
        uncovered = [e for e in uncovered if e not in chosen]
        parts += 1
    return parts


def maximal_cliques(G: Clutter) -> list[int]:
    _require_graph(G)
    adj = adjacency(G.n, G.edges)
    out: list[int] = []

    def expand(R: int, P: int, X: int) -> None:
        if not P and not X:
            out.append(R)
            return
        for v in members(P):
            bit = 1 << (v - 1)
            expand(R | bit, P & adj[v - 1], X & adj[v - 1])
            P &= ~bit
            X |= bit

    expand(0, full_set(G.n), 0)
    return sorted(out, key=lambda s: (popcount(s), members(s)))


CLIQUE_PARTITION_MAX_N = 10


def clique_partition_number(G: Clutter) -> Optional[int]:
    """Fewest cliques that, with one independent set, partition the vertices.

    ``None`` above ``CLIQUE_PARTITION_MAX_N`` vertices.
    """
    _require_graph(G)
    n = G.n
    if n > CLIQUE_PARTITION_MAX_N:
        return None
    adj = adjacency(n, G.edges)
    size = 1 << n
    clique = [False] * size
    indep = [False] * size
    clique[0] = indep[0] = True
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        clique[mask] = clique[rest] and adj[low] & rest == rest
        indep[mask] = indep[rest] and not adj[low] & rest
    cover = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        rest = mask & ~low
        best = n
        sub = rest
        while True:
            c = sub | low
            if clique[c]:
                best = min(best, 1 + cover[mask & ~c])
            if sub == 0:
                break
            sub = (sub - 1) & rest
        cover[mask] = best
    top = size - 1
    return min(cover[top & ~J] for J in range(size) if indep[J])


# -- 2-collages ------------------------------------------------------------


def _collage_cover(C: Clutter) -> list[int]:
    """``cov[j]``: bitmask of the edges ``e`` with ``e`` minus one vertex inside edge ``j``."""
    cov = []
    for f in C.edges:
        mask = 0
        for i, e in enumerate(C.edges):
            if popcount(e & ~f) <= 1:
                mask |= 1 << i
        cov.append(mask)
    return cov


def is_two_collage(C: Clutter, chosen) -> bool:
    chosen = list(chosen)
    return all(any(popcount(e & ~f) <= 1 for f in chosen) for e in C.edges)


def min_two_collage(C: Clutter) -> tuple[int, tuple[VertexSet, ...]]:
    """Least total ``sum(|e| - 1)`` over 2-collages, with a witness edge set."""
    _require_edges(C, "a 2-collage")
    edges = C.edges
    m = len(edges)
    cov = _collage_cover(C)
    weight = [popcount(e) - 1 for e in edges]
    full = (1 << m) - 1

    @lru_cache(maxsize=None)
    def best(covered: int) -> tuple[int, tuple[int, ...]]:
        if covered == full:
            return 0, ()
        rest = full & ~covered
        i = (rest & -rest).bit_length() - 1
        out = None
        for j in range(m):
            if cov[j] >> i & 1:
                w, pick = best(covered | cov[j])
                cand = (w + weight[j], (j,) + pick)
                if out is None or cand[0] < out[0]:
                    out = cand
        return out

    w, pick = best(0)
    return w, tuple(edges[j] for j in sorted(pick))


def single_edge_collages(C: Clutter) -> list[VertexSet]:
    return [f for f, mask in zip(C.edges, _collage_cover(C)) if mask == (1 << len(C.edges)) - 1]


# -- composite bounds ------------------------------------------------------


def free_vertex_clutter(C: Clutter) -> Clutter:
    """Same vertices, dropping every edge that owns a free vertex."""
    drop = set(free_vertex_edges(C))
    return Clutter(C.n, tuple(e for i, e in enumerate(C.edges) if i not in drop))


def lm_bound(C: Clutter) -> int:
    """``|V| - |E| + |E'| - matching(C')`` with ``C'`` from :func:`free_vertex_clutter`."""
    _require_edges(C, "the free-vertex bound")
    Cp = free_vertex_clutter(C)
    return C.n - len(C.edges) + len(Cp.edges) - matching_numbers(Cp)[0]


def ds_bound(C: Clutter) -> int:
    """``epsilon(C) + n - |V(C_red)|``."""
    _require_edges(C, "the domination bound")
    return edgewise_domination_index(C) + C.n - reduce(C).clutter.n


# -- per-instance report ---------------------------------------------------

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"
INFORMATIVE = "INFORMATIVE"

DOMINATION_READING = "covered-or-trivial vertices exempt from domination"


@dataclass(frozen=True)
class ReportOptions:
    budget: Optional[int] = None
    field: int = 0
    witnesses: bool = False


@dataclass
class BoundReport:
    """Invariants, bound values, verdicts and conjecture gaps for one clutter.

    ``verdicts`` is always ``evaluate_verdicts(values)``; ``notes`` records
    the conventions that shaped the values.
    """

    id: str
    n: int
    edges: list
    values: dict
    verdicts: dict
    gaps: dict
    notes: list = field(default_factory=list)
    witnesses: Optional[dict] = None

    def failures(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v == FAIL]

    def to_record(self) -> dict:
        rec = {
            "id": self.id,
            "n": self.n,
            "edges": self.edges,
            "values": self.values,
            "verdicts": self.verdicts,
            "gaps": self.gaps,
            "notes": self.notes,
        }
        if self.witnesses is not None:
            rec["witnesses"] = self.witnesses
        return rec


def _ge(lhs, rhs) -> str:
    if lhs is None or rhs is None:
        return SKIPPED
    return PASS if lhs >= rhs else FAIL


def _le(lhs, rhs) -> str:
    if lhs is None or rhs is None:
        return SKIPPED
    return PASS if lhs <= rhs else FAIL


def _one_sided_le(lhs, lower, upper) -> str:
    """``lhs <= x`` for an unknown ``x`` known only to lie in ``[lower, upper]``."""
    if lhs is None:
        return SKIPPED
    if lhs <= lower:
        return PASS
    if lhs > upper:
        return FAIL
    return SKIPPED


def evaluate_verdicts(v: dict) -> dict:
    """Verdict per proved inequality, computed from recorded values only."""
    out: dict[str, str] = {}
    if v["edgeless"]:
        for name, lhs in (("depth_quot_ge_domination_bound", v["depth_quot"]),
                          ("sdepth_quot_ge_domination_bound", v["sdepth_quot"])):
            out[name] = FAIL if _ge(lhs, v["domination_bound"]) == FAIL else INFORMATIVE
        return out

    out["depth_quot_ge_size"] = _ge(v["depth_quot"], v["size"])
    out["depth_ideal_ge_size_plus_1"] = _ge(v["depth_ideal"], v["size_plus_1"])
    out["sdepth_ideal_ge_size_plus_1"] = _ge(v["sdepth_ideal"], v["size_plus_1"])
    for name, lhs in (("depth_quot_ge_domination_bound", v["depth_quot"]),
                      ("sdepth_quot_ge_domination_bound", v["sdepth_quot"])):
        verdict = _ge(lhs, v["domination_bound"])
        if v["all_trivial"] and verdict == PASS:
            verdict = INFORMATIVE  # epsilon = 0 convention
        out[name] = verdict
    sreg = v["sreg_quot"]
    out["sreg_quot_le_cosize"] = _le(sreg, v["cosize"])
    out["sreg_quot_le_free_vertex_bound"] = _le(sreg, v["free_vertex_bound"])
    out["sreg_quot_le_collage_weight"] = _le(sreg, v["collage_weight"])
    if v["single_edge_collage_bound"] is not None:
        out["sreg_quot_le_single_edge_collage"] = _le(sreg, v["single_edge_collage_bound"])
    if sreg is None:
        out["sreg_quot_zero_iff_all_trivial"] = SKIPPED
    else:
        out["sreg_quot_zero_iff_all_trivial"] = PASS if (sreg == 0) == v["all_trivial"] else FAIL

    if v["is_graph"]:
        if v["is_cochordal"]:
            out["cochordal_sreg_quot_le_1"] = _le(sreg, 1)
        if v["cochord_exact"]:
            out["sreg_quot_le_cochord"] = _le(sreg, v["cochord"])
            out["cochord_le_minimax_matching"] = _le(v["cochord"], v["minimax_matching"])
        else:
            out["sreg_quot_le_cochord"] = _one_sided_le(sreg, v["cochord_lower"], v["cochord"])
            out["cochord_le_minimax_matching"] = (
                FAIL if v["cochord_lower"] > v["minimax_matching"]
                else PASS if v["cochord"] <= v["minimax_matching"] else SKIPPED
            )
        if v["clique_partition"] is not None:
            out["sreg_quot_le_clique_partition"] = _le(sreg, v["clique_partition"])
        out["sreg_quot_le_clique_deletion"] = _le(sreg, v["clique_deletion_bound"])
        out["sreg_quot_le_minimax_matching"] = _le(sreg, v["minimax_matching"])
        out["reg_quot_ge_indmatch"] = _ge(v["reg_quot"], v["indmatch"])
    return out


def conjecture_gaps(v: dict) -> dict:
    """Reported, never asserted: both should be nonnegative if the conjectures hold."""
    def diff(a, b):
        return None if a is None or b is None else a - b

    return {
        "sdepth_minus_depth": diff(v["sdepth_quot"], v["depth_quot"]),
        "reg_minus_sreg": diff(v["reg_quot"], v["sreg_quot"]),
    }


@lru_cache(maxsize=8192)
def _sreg_quot(I, budget):
    from .sdepth import Mode, stanley_regularity

    return stanley_regularity(I, Mode.QUOTIENT, budget)


def _exact_value(res):
    return res.value if res.exact else None


def bound_report(C: Clutter, options: ReportOptions = ReportOptions(), instance_id: str = "") -> BoundReport:
    """Every invariant, bound and verdict for one clutter."""
    from .homology import homological_invariants
    from .ideal import cosize, edge_ideal, size
    from .sdepth import Mode, stanley_depth, stanley_regularity

    budget = options.budget
    I = edge_ideal(C)
    notes = [DOMINATION_READING]
    v: dict = {"edgeless": not C.edges, "is_graph": bool(C.edges) and C.is_graph()}
    witnesses = {} if options.witnesses else None

    if not C.edges:
        # S/0 = S: every depth-type invariant is n, every regularity-type one is 0
        v.update(depth_quot=C.n, sdepth_quot=C.n, projdim_quot=0, reg_quot=0, sreg_quot=0,
                 domination_bound=C.n - reduce(C).clutter.n)
        notes.append("edgeless: domination bound drops the epsilon term")
        return BoundReport(instance_id, C.n, [], v, evaluate_verdicts(v), conjecture_gaps(v), notes, witnesses)

    sd_q = stanley_depth(I, Mode.QUOTIENT, budget)
    sd_i = stanley_depth(I, Mode.IDEAL, budget)
    sr_q = _sreg_quot(I, budget)
    sr_i = stanley_regularity(I, Mode.IDEAL, budget)
    hom = homological_invariants(I, options.field)
    all_trivial = all(popcount(e) == 1 for e in C.edges)
    if all_trivial:
        notes.append("only trivial edges: epsilon taken as 0")
    v.update(
        all_trivial=all_trivial,
        sdepth_quot=_exact_value(sd_q),
        sdepth_ideal=_exact_value(sd_i),
        sreg_quot=_exact_value(sr_q),
        sreg_ideal=_exact_value(sr_i),
        depth_quot=hom.depth,
        depth_ideal=hom.depth + 1,
        projdim_quot=hom.projdim,
        reg_quot=hom.reg,
        size=size(I),
        cosize=cosize(I),
    )
    v["size_plus_1"] = v["size"] + 1
    v["epsilon"] = edgewise_domination_index(C)
    v["domination_bound"] = ds_bound(C)
    v["free_vertex_bound"] = lm_bound(C)
    v["max_matching"], v["minimax_matching"] = matching_numbers(C)
    weight, collage = min_two_collage(C)
    v["collage_weight"] = weight
    singles = single_edge_collages(C)
    v["single_edge_collage_bound"] = min(popcount(e) - 1 for e in singles) if singles else None

    if v["is_graph"]:
        cc = cochord(C)
        v.update(cochord=cc.value, cochord_exact=cc.exact, cochord_lower=cc.lower,
                 is_cochordal=is_cochordal(C), indmatch=induced_matching(C),
                 clique_partition=clique_partition_number(C))
        if not cc.exact:
            notes.append("cochord is a greedy upper bound")
        deletion = []
        for A in maximal_cliques(C):
            rest = Clutter(C.n, tuple(e for e in C.edges if not e & A))
            if not rest.edges:
                deletion.append(1)
                continue
            r = _sreg_quot(edge_ideal(rest), budget)
            if r.exact:
                deletion.append(r.value + 1)
        v["clique_deletion_bound"] = min(deletion) if deletion else None

    if witnesses is not None:
        witnesses["collage"] = [list(members(e)) for e in collage]
        for key, res in (("sdepth_quot", sd_q), ("sdepth_ideal", sd_i), ("sreg_quot_dual", sr_q.dual_result)):
            if res is not None and res.partition is not None:
                witnesses[key] = res.partition.interval_lists()

    return BoundReport(instance_id, C.n, C.edge_lists(), v, evaluate_verdicts(v), conjecture_gaps(v), notes, witnesses)


def subadditivity_report(I1, I2, budget: Optional[int] = None) -> dict:
    """Both subadditivity inequalities for a pair of nonzero squarefree ideals."""
    from .ideal import ideal_intersection, ideal_sum
    from .sdepth import Mode, stanley_regularity

    if I1.is_zero or I2.is_zero:
        raise ValueError("subadditivity needs two nonzero ideals")

    def q(I):
        return _exact_value(_sreg_quot(I, budget))

    def i(I):
        return _exact_value(stanley_regularity(I, Mode.IDEAL, budget))

    v = {
        "sreg_quot_sum": q(ideal_sum([I1, I2])),
        "sreg_quot_1": q(I1),
        "sreg_quot_2": q(I2),
        "sreg_ideal_intersection": i(ideal_intersection([I1, I2])),
        "sreg_ideal_1": i(I1),
        "sreg_ideal_2": i(I2),
    }

    def total(a, b):
        return None if a is None or b is None else a + b

    verdicts = {
        "sreg_quot_of_sum_subadditive": _le(v["sreg_quot_sum"], total(v["sreg_quot_1"], v["sreg_quot_2"])),
        "sreg_ideal_of_intersection_subadditive": _le(
            v["sreg_ideal_intersection"], total(v["sreg_ideal_1"], v["sreg_ideal_2"])
        ),
    }
    return {"values": v, "verdicts": verdicts}
