"""Squarefree monomial ideals stored as antichains of generator supports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .clutter import (
    MAX_VERTICES,
    Clutter,
    VertexSet,
    full_set,
    is_antichain,
    members,
    minimalize,
    popcount,
    set_key,
    vset,
)


@dataclass(frozen=True)
class SquarefreeIdeal:
    """Ideal of ``K[x_1..x_n]`` generated by ``x^g`` for each support ``g`` in ``gens``.

    ``gens`` may be empty (the zero ideal); an empty support (the unit ideal)
    is rejected.
    """

    n: int
    gens: tuple[VertexSet, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"variable count {self.n} outside 0..{MAX_VERTICES}")
        top = full_set(self.n)
        for g in self.gens:
            if g == 0:
                raise ValueError("empty generator: the ideal would be the whole ring")
            if g & ~top:
                raise ValueError(f"generator {members(g)} uses a variable beyond x_{self.n}")
        canon = tuple(sorted(set(self.gens), key=set_key))
        if not is_antichain(canon):
            raise ValueError("generators do not form an antichain")
        object.__setattr__(self, "gens", canon)

    @classmethod
    def from_lists(cls, n: int, gens: Iterable[Iterable[int]]) -> "SquarefreeIdeal":
        """Build from 1-indexed supports, keeping only minimal ones."""
        masks = [vset(g) for g in gens]
        if any(m == 0 for m in masks):
            raise ValueError("empty generator")
        return cls(n, minimalize(masks))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, sigma: VertexSet) -> bool:
        """Whether ``x^sigma`` lies in the ideal."""
        return any(g & sigma == g for g in self.gens)

    def gen_lists(self) -> list[list[int]]:
        return [list(members(g)) for g in self.gens]

    def lcm(self) -> VertexSet:
        s = 0
        for g in self.gens:
            s |= g
        return s

    def is_principal(self) -> bool:
        return len(self.gens) == 1

    def is_prime(self) -> bool:
        """Generated by variables (possibly none)."""
        return all(popcount(g) == 1 for g in self.gens)

    def __repr__(self):
        return f"SquarefreeIdeal(n={self.n}, gens={self.gen_lists()})"


def edge_ideal(C: Clutter) -> SquarefreeIdeal:
    return SquarefreeIdeal(C.n, C.edges)


def ideal_clutter(I: SquarefreeIdeal) -> Clutter:
    return Clutter(I.n, I.gens)


def membership_table(I: SquarefreeIdeal) -> np.ndarray:
    """Boolean array over all ``2**n`` supports: ``table[s]`` iff ``x^s`` in ``I``."""
    size = 1 << I.n
    table = np.zeros(size, dtype=bool)
    idx = np.arange(size)
    for g in I.gens:
        table |= (idx & g) == g
    return table


def _same_n(ideals: Sequence[SquarefreeIdeal]) -> int:
    if not ideals:
        raise ValueError("need at least one ideal")
    n = ideals[0].n
    if any(J.n != n for J in ideals):
        raise ValueError("ideals live in rings with different variable counts")
    return n


def ideal_sum(ideals: Sequence[SquarefreeIdeal]) -> SquarefreeIdeal:
    n = _same_n(ideals)
    return SquarefreeIdeal(n, minimalize(g for J in ideals for g in J.gens))


def _intersect_gens(a: Iterable[VertexSet], b: Iterable[VertexSet]) -> tuple[VertexSet, ...]:
    b = tuple(b)
    return minimalize(x | y for x in a for y in b)


def ideal_intersection(ideals: Sequence[SquarefreeIdeal]) -> SquarefreeIdeal:
    """Intersection via pairwise lcm closure, minimalized after each factor."""
    n = _same_n(ideals)
    gens = ideals[0].gens
    for J in ideals[1:]:
        gens = _intersect_gens(gens, J.gens)
    return SquarefreeIdeal(n, gens)


def alexander_dual(I: SquarefreeIdeal) -> SquarefreeIdeal:
    """Dual ideal: generators are the minimal transversals of the supports of ``I``.

    Computed as the intersection of the primes ``(x_j : j in g)`` over the
    generators ``g``, one prime at a time.
    """
    if I.is_zero:
        raise ValueError("the Alexander dual of the zero ideal is not defined here")
    gens: tuple[VertexSet, ...] = (0,)
    for g in I.gens:
        prime = [1 << (v - 1) for v in members(g)]
        gens = _intersect_gens(gens, prime)
    return SquarefreeIdeal(I.n, gens)


def primary_components(I: SquarefreeIdeal) -> tuple[VertexSet, ...]:
    """Variable sets of the irredundant prime components, canonically ordered."""
    return alexander_dual(I).gens


def min_union_cover(sets: Sequence[VertexSet]) -> int:
    """Fewest members of ``sets`` whose union is the union of all of them.

    Breadth-first over reachable unions, so the first hit is a minimum.
    """
    target = 0
    for s in sets:
        target |= s
    if target == 0:
        return 0
    frontier = {0}
    seen = {0}
    k = 0
    while frontier:
        k += 1
        nxt = set()
        for u in frontier:
            for s in sets:
                w = u | s
                if w == target:
                    return k
                if w not in seen:
                    seen.add(w)
                    nxt.add(w)
        frontier = nxt
    raise AssertionError("unreachable: union of all sets is always reached")


def size(I: SquarefreeIdeal) -> int:
    """Lyubeznik size ``v + n - h - 1`` from the prime components."""
    if I.is_zero:
        raise ValueError("size of the zero ideal is not defined")
    comps = primary_components(I)
    total = 0
    for c in comps:
        total |= c
    v = min_union_cover(comps)
    h = popcount(total)
    return v + I.n - h - 1


def cosize(I: SquarefreeIdeal) -> int:
    if I.is_zero:
        raise ValueError("cosize of the zero ideal is not defined")
    return popcount(I.lcm()) - min_union_cover(I.gens)


@dataclass
class SplitClassification:
    """Labels of the squarefree monomials of ``I`` under a chosen splitter prime.

    ``labels`` maps each support ``w`` in ``I`` to the bitmask of its label
    ``tau`` (bit ``j`` set when component ``j`` is in ``tau``, 0-indexed).
    ``factorizes[tau]`` records whether the monomials with that label form a
    product set ``{u * v}`` with ``u`` over the splitter variables and ``v``
    over the rest.
    """

    n: int
    components: tuple[VertexSet, ...]
    splitter: int
    labels: dict[VertexSet, int]
    factorizes: dict[int, bool] = field(default_factory=dict)

    @property
    def s(self) -> int:
        return len(self.components)

    def label_sets(self) -> dict[int, list[VertexSet]]:
        out: dict[int, list[VertexSet]] = {}
        for w, tau in self.labels.items():
            out.setdefault(tau, []).append(w)
        return out


class SplitError(RuntimeError):
    pass


def _admissible_labels(u: int, v: int, inner: np.ndarray, outer: np.ndarray, taus: np.ndarray) -> np.ndarray:
    """Every ``tau`` (as bitmask) meeting both membership conditions, by brute force."""
    s = len(inner)
    ok = np.ones(len(taus), dtype=bool)
    for j in range(s):
        in_tau = (taus >> j) & 1 == 1
        hits_inner = (u & inner[j]) != 0
        hits_outer = (v & outer[j]) != 0
        # j outside tau: u must lie in P_j'; j inside tau: u must avoid P_j' and v must lie in P_j''
        ok &= np.where(in_tau, (not hits_inner) and hits_outer, hits_inner)
    return taus[ok]


def split_decompose(I: SquarefreeIdeal, k: int) -> SplitClassification:
    """Classify the squarefree monomials of ``I`` by the splitting on component ``k``.

    ``k`` is 1-indexed into :func:`primary_components`.  Each support ``w``
    splits as ``u = w ∩ Y`` and ``v = w \\ Y`` with ``Y`` the splitter's
    variables; its label is the unique ``tau`` with ``u`` in every
    ``P_j'`` for ``j`` outside ``tau``, in none for ``j`` inside, and ``v`` in
    every ``P_j''`` for ``j`` inside.  Raises :class:`SplitError` if some
    support gets zero or several labels, or if ``tau = [s]`` shows up.
    """
    if I.is_zero:
        raise ValueError("cannot split the zero ideal")
    comps = primary_components(I)
    s = len(comps)
    if not 1 <= k <= s:
        raise ValueError(f"splitter index {k} outside 1..{s}")
    Y = comps[k - 1]
    inner = np.array([c & Y for c in comps], dtype=np.int64)
    outer = np.array([c & ~Y for c in comps], dtype=np.int64)
    taus = np.arange(1 << s, dtype=np.int64)
    everything = (1 << s) - 1

    labels: dict[VertexSet, int] = {}
    for w in range(1 << I.n):
        if not I.contains(w):
            continue
        u, v = w & Y, w & ~Y
        found = _admissible_labels(u, v, inner, outer, taus)
        if len(found) != 1:
            raise SplitError(f"support {members(w)} received {len(found)} labels")
        tau = int(found[0])
        if tau == everything:
            raise SplitError(f"support {members(w)} received the full label")
        labels[w] = tau

    cls = SplitClassification(I.n, comps, k, labels)
    for tau, ws in cls.label_sets().items():
        us = {w & Y for w in ws}
        vs = {w & ~Y for w in ws}
        cls.factorizes[tau] = len(us) * len(vs) == len(ws) and all(labels.get(a | b) == tau for a in us for b in vs)
    return cls


def direct_label(comps: Sequence[VertexSet], k: int, w: VertexSet) -> int:
    """Closed-form label: the components whose splitter part misses ``w``."""
    Y = comps[k - 1]
    tau = 0
    for j, c in enumerate(comps):
        if w & c & Y == 0:
            tau |= 1 << j
    return tau
