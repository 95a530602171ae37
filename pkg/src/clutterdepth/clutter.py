"""Clutters over small vertex sets.

Vertex sets are plain ``int`` bitmasks: vertex ``i`` (1-indexed, as in
``x_1..x_n``) is bit ``i - 1``.  Everything here is immutable and pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

MAX_VERTICES = 16

VertexSet = int


def vset(indices: Iterable[int]) -> VertexSet:
    """Bitmask of the given 1-indexed vertices."""
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"vertex index {i} out of range")
        mask |= 1 << (i - 1)
    return mask


def members(mask: VertexSet) -> tuple[int, ...]:
    """Sorted 1-indexed vertices of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: VertexSet) -> int:
    return bin(mask).count("1")


def set_key(mask: VertexSet) -> tuple[int, tuple[int, ...]]:
    """Canonical order: by cardinality, then lexicographic on indices."""
    m = members(mask)
    return (len(m), m)


def lex_key(mask: VertexSet) -> tuple[int, ...]:
    return members(mask)


def full_set(n: int) -> VertexSet:
    return (1 << n) - 1


def minimalize(sets: Iterable[VertexSet]) -> tuple[VertexSet, ...]:
    """Minimal members of a family, deduplicated and canonically ordered."""
    kept: list[VertexSet] = []
    for s in sorted(set(sets), key=set_key):
        if not any(k & s == k for k in kept):
            kept.append(s)
    return tuple(kept)


def is_antichain(sets: Sequence[VertexSet]) -> bool:
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            if i != j and a & b == a:
                return False
    return True


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")


@dataclass(frozen=True)
class Clutter:
    """A vertex count ``n`` and an antichain of nonempty edges in ``{1..n}``."""

    n: int
    edges: tuple[VertexSet, ...]

    def __post_init__(self):
        _check_n(self.n)
        edges = tuple(self.edges)
        top = full_set(self.n)
        for e in edges:
            if e == 0:
                raise ValueError("empty edge")
            if e & ~top:
                raise ValueError(f"edge {members(e)} leaves vertex range 1..{self.n}")
        canon = tuple(sorted(set(edges), key=set_key))
        if not is_antichain(canon):
            raise ValueError("edges do not form an antichain")
        object.__setattr__(self, "edges", canon)

    @classmethod
    def from_lists(cls, n: int, edges: Iterable[Iterable[int]], minimal: bool = False) -> "Clutter":
        """Build from 1-indexed edge lists; ``minimal=True`` drops non-minimal edges."""
        masks = [vset(e) for e in edges]
        if minimal:
            if any(m == 0 for m in masks):
                raise ValueError("empty edge")
            masks = list(minimalize(masks))
        return cls(n, tuple(masks))

    def edge_lists(self) -> list[list[int]]:
        return [list(members(e)) for e in self.edges]

    @property
    def support(self) -> VertexSet:
        s = 0
        for e in self.edges:
            s |= e
        return s

    def is_graph(self) -> bool:
        return all(popcount(e) == 2 for e in self.edges)

    def trivial_edges(self) -> list[VertexSet]:
        return [e for e in self.edges if popcount(e) == 1]

    def __repr__(self):
        return f"Clutter(n={self.n}, edges={self.edge_lists()})"


class Reduction(NamedTuple):
    clutter: Clutter
    isolated: VertexSet
    # vertex_map[j - 1] is the original index of new vertex j
    vertex_map: tuple[int, ...]


class Contraction(NamedTuple):
    clutter: Clutter
    improper: bool
    vertex_map: tuple[int, ...]


def _reindex(mask: VertexSet, keep: Sequence[int]) -> VertexSet:
    out = 0
    for j, old in enumerate(keep):
        if mask >> (old - 1) & 1:
            out |= 1 << j
    return out


def restrict(C: Clutter, keep: VertexSet) -> tuple[Clutter, tuple[int, ...]]:
    """Clutter on the vertices ``keep`` (densely reindexed); edges must lie inside."""
    kept = members(keep)
    edges = []
    for e in C.edges:
        if e & ~keep:
            raise ValueError("edge leaves the kept vertex set")
        edges.append(_reindex(e, kept))
    return Clutter(len(kept), tuple(edges)), kept


def reduce(C: Clutter) -> Reduction:
    """Drop isolated vertices; returns the reduced clutter, the isolated set and the index map."""
    sup = C.support
    isolated = full_set(C.n) & ~sup
    red, kept = restrict(C, sup)
    return Reduction(red, isolated, kept)


def add_set(C: Clutter, A: VertexSet) -> Clutter:
    """``C + A``: minimal members of ``E(C) ∪ {A}`` on the same vertex set."""
    if A == 0:
        raise ValueError("cannot add the empty set")
    if A & ~full_set(C.n):
        raise ValueError("set leaves the vertex range")
    return Clutter(C.n, minimalize(C.edges + (A,)))


def contract(C: Clutter, A: VertexSet) -> Contraction:
    """``C : A`` on ``V \\ A``.  An edge inside ``A`` makes the result improper (flagged)."""
    if A == 0:
        raise ValueError("cannot contract the empty set")
    A &= full_set(C.n)
    shrunk = [e & ~A for e in C.edges]
    keep = full_set(C.n) & ~A
    kept = members(keep)
    if any(e == 0 for e in shrunk):
        return Contraction(Clutter(len(kept), ()), True, kept)
    edges = minimalize(_reindex(e, kept) for e in shrunk)
    return Contraction(Clutter(len(kept), edges), False, kept)


def neighbors(C: Clutter, v: int) -> VertexSet:
    if not 1 <= v <= C.n:
        raise ValueError(f"vertex {v} out of range 1..{C.n}")
    bit = 1 << (v - 1)
    out = 0
    for e in C.edges:
        if e & bit:
            out |= e
    return out & ~bit


def free_vertex_edges(C: Clutter) -> list[int]:
    """Indices of edges owning a vertex that lies in no other edge."""
    out = []
    for i, e in enumerate(C.edges):
        others = 0
        for j, f in enumerate(C.edges):
            if j != i:
                others |= f
        if e & ~others:
            out.append(i)
    return out


def relabel(C: Clutter, perm: Sequence[int]) -> Clutter:
    """Apply ``v -> perm[v - 1]`` to every vertex (``perm`` is a permutation of 1..n)."""
    if sorted(perm) != list(range(1, C.n + 1)):
        raise ValueError("not a permutation of the vertex set")
    return Clutter(C.n, tuple(permute_set(e, perm) for e in C.edges))


def permute_set(mask: VertexSet, perm: Sequence[int]) -> VertexSet:
    out = 0
    for v in members(mask):
        out |= 1 << (perm[v - 1] - 1)
    return out


def embed(C: Clutter, extra: int = 1) -> Clutter:
    """Same edges in a larger vertex set (new vertices are isolated)."""
    return Clutter(C.n + extra, C.edges)
