"""Betti numbers, projective dimension, depth and regularity via Hochster's formula.

For a squarefree ideal ``I`` with Stanley-Reisner complex ``D``,
``beta_{i,sigma}(I) = dim H~_{|sigma| - i - 2}(D restricted to sigma)``.
Homology ranks are exact: fraction-free integer elimination over the
rationals, or elimination over GF(p).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Union

from . import kernels
from .clutter import full_set, members, popcount
from .ideal import SquarefreeIdeal, alexander_dual

RATIONALS = 0
_MAX_PRIME = 2**31 - 1

Field = int  # 0 for the rationals, otherwise a prime


def parse_field(spec: Union[str, int, None]) -> Field:
    """``"q"``/``None``/``0`` for the rationals, ``"p:<prime>"`` or an int for GF(p)."""
    if spec is None:
        return RATIONALS
    if isinstance(spec, int):
        p = spec
    else:
        text = spec.strip().lower()
        if text in ("q", "qq", "rationals"):
            return RATIONALS
        if not text.startswith("p:"):
            raise ValueError(f"unknown field {spec!r}; use 'q' or 'p:<prime>'")
        try:
            p = int(text[2:])
        except ValueError:
            raise ValueError(f"bad prime in field {spec!r}") from None
    if p == 0:
        return RATIONALS
    if not 2 <= p <= _MAX_PRIME or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not a prime below 2**31")
    return p


def field_name(field: Field) -> str:
    return "q" if field == RATIONALS else f"p:{field}"


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    facets: tuple[int, ...]

    def faces(self) -> list[int]:
        out = set()
        for f in self.facets:
            t = f
            while True:
                out.add(t)
                if t == 0:
                    break
                t = (t - 1) & f
        return sorted(out, key=lambda s: (popcount(s), members(s)))

    def __contains__(self, sigma: int) -> bool:
        return any(sigma & f == sigma for f in self.facets)


def stanley_reisner(I: SquarefreeIdeal) -> SimplicialComplex:
    """Complex whose faces are the supports outside ``I``."""
    top = full_set(I.n)
    if I.is_zero:
        return SimplicialComplex(I.n, (top,))
    facets = tuple(sorted((top & ~c for c in alexander_dual(I).gens), key=lambda s: (popcount(s), members(s))))
    D = SimplicialComplex(I.n, facets)
    for s in range(1 << I.n):
        if (s in D) == I.contains(s):
            raise AssertionError(f"face test disagrees with ideal membership at {members(s)}")
    return D


def rank_rational(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix (rows as ``{column: value}``)."""
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        # pivot on the entry of least absolute value to keep numbers small
        best = None
        for ri, r in enumerate(rows):
            for c, v in r.items():
                if best is None or abs(v) < best[0]:
                    best = (abs(v), ri, c)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        _, ri, col = best
        prow = rows.pop(ri)
        pv = prow[col]
        rank += 1
        nxt = []
        for r in rows:
            f = r.get(col)
            if f is None:
                nxt.append(r)
                continue
            new = {c: v * pv for c, v in r.items()}
            for c, v in prow.items():
                w = new.get(c, 0) - f * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            if new:
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
                nxt.append(new)
        rows = nxt
    return rank


def _rank(rows: list[dict[int, int]], ncols: int, field: Field) -> int:
    if not rows or ncols == 0:
        return 0
    if field == RATIONALS:
        return rank_rational(rows)
    dense = [[0] * ncols for _ in rows]
    for drow, r in zip(dense, rows):
        for c, v in r.items():
            drow[c] = v
    return kernels.rank_mod_p(dense, ncols, field)


def reduced_homology(faces: list[int], field: Field = RATIONALS) -> dict[int, int]:
    """Nonzero reduced homology ranks ``{dim: rank}`` of a complex given by all its faces.

    The empty face is part of the chain complex (dimension -1); the void
    complex (no faces at all) has no homology.
    """
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(popcount(f) - 1, []).append(f)
    if not by_dim:
        return {}
    index = {k: {f: i for i, f in enumerate(fs)} for k, fs in by_dim.items()}
    top = max(by_dim)
    ranks = {}
    for k in range(0, top + 1):
        lower = index.get(k - 1, {})
        rows = []
        for f in by_dim.get(k, []):
            row = {}
            verts = members(f)
            for j, v in enumerate(verts):
                g = f & ~(1 << (v - 1))
                row[lower[g]] = -1 if j % 2 else 1
            rows.append(row)
        ranks[k] = _rank(rows, len(lower), field)
    out = {}
    for k in range(-1, top + 1):
        h = len(by_dim.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


@dataclass(frozen=True)
class BettiTable:
    """Multigraded Betti numbers ``beta_{i,sigma}`` of the ideal ``I`` itself.

    Homological degree 0 holds the minimal generators; the table of ``S/I``
    is this one shifted up by one, plus ``beta_{0,emptyset} = 1``.
    """

    n: int
    field: Field
    entries: tuple[tuple[int, int, int], ...]  # (i, sigma, beta), sorted

    def get(self, i: int, sigma: int) -> int:
        for a, s, b in self.entries:
            if a == i and s == sigma:
                return b
        return 0

    def graded(self) -> dict[tuple[int, int], int]:
        """Coarse table ``{(i, j): beta_{i,j}}`` with ``j`` the total degree."""
        out: dict[tuple[int, int], int] = {}
        for i, s, b in self.entries:
            key = (i, popcount(s))
            out[key] = out.get(key, 0) + b
        return out


def _union_closure(gens: tuple[int, ...]) -> list[int]:
    seen = {0}
    for g in gens:
        seen |= {s | g for s in seen}
    seen.discard(0)
    return sorted(seen, key=lambda s: (popcount(s), members(s)))


@lru_cache(maxsize=4096)
def betti_table(I: SquarefreeIdeal, field: Field = RATIONALS, prune: bool = True) -> BettiTable:
    """All ``beta_{i,sigma}(I)`` from induced-subcomplex homology.

    With ``prune`` only unions of generator supports are visited (every other
    induced subcomplex is a cone); ``prune=False`` visits all ``2**n`` supports.
    """
    if I.is_zero:
        raise ValueError("Betti table of the zero ideal is empty by convention; handle it upstream")
    D = stanley_reisner(I)
    faces = D.faces()
    sigmas = _union_closure(I.gens) if prune else range(1, 1 << I.n)
    entries = []
    for sigma in sigmas:
        sub = [f for f in faces if f & sigma == f]
        k = popcount(sigma)
        for dim, h in reduced_homology(sub, field).items():
            i = k - dim - 2
            if i >= 0:
                entries.append((i, sigma, h))
    entries.sort(key=lambda e: (e[0], popcount(e[1]), members(e[1])))
    return BettiTable(I.n, field, tuple(entries))


@dataclass(frozen=True)
class HomologicalInvariants:
    projdim: int
    depth: int
    reg: int


def homological_invariants(I: SquarefreeIdeal, field: Field = RATIONALS) -> HomologicalInvariants:
    """Projective dimension, depth and regularity of ``S/I``.

    The zero ideal gets ``(0, n, 0)`` (``S/I = S`` is free).
    """
    if I.is_zero:
        return HomologicalInvariants(0, I.n, 0)
    table = betti_table(I, field)
    pd_ideal = max(i for i, _, _ in table.entries)
    reg_ideal = max(popcount(s) - i for i, s, _ in table.entries)
    projdim = pd_ideal + 1
    return HomologicalInvariants(projdim, I.n - projdim, reg_ideal - 1)


def terai_sides(I: SquarefreeIdeal, field: Field = RATIONALS) -> tuple[int, int]:
    """``(projdim(S/I) - 1, reg(S/I^v))`` from two separate Betti tables; equal by duality."""
    left = homological_invariants(I, field).projdim - 1
    right = homological_invariants(alexander_dual(I), field).reg
    return left, right
