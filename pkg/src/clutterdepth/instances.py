"""Instance files, seeded random clutters and exhaustive enumeration.

An instance file holds one JSON object per line::

    {"id": "c5", "n": 5, "edges": [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]]}

``id`` and ``labels`` are optional; vertices are 1-indexed.  Blank lines and
lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from .clutter import MAX_VERTICES, Clutter, is_antichain, minimalize, set_key, vset


class InstanceError(ValueError):
    """Malformed instance; carries the line number and offending field."""

    def __init__(self, line: int, fld: str, message: str):
        super().__init__(f"line {line}: field {fld!r}: {message}")
        self.line = line
        self.field = fld


@dataclass
class Instance:
    clutter: Clutter
    id: str = ""
    labels: Optional[list] = None
    warnings: list = field(default_factory=list)


def _parse_object(obj, line: int, strict: bool) -> Instance:
    if not isinstance(obj, dict):
        raise InstanceError(line, "<record>", "expected a JSON object")
    unknown = set(obj) - {"id", "n", "edges", "labels"}
    if unknown:
        raise InstanceError(line, sorted(unknown)[0], "unknown field")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or not 0 <= n <= MAX_VERTICES:
        raise InstanceError(line, "n", f"expected an integer in 0..{MAX_VERTICES}")
    edges = obj.get("edges")
    if not isinstance(edges, list):
        raise InstanceError(line, "edges", "expected a list of vertex lists")
    masks = []
    for k, e in enumerate(edges):
        where = f"edges[{k}]"
        if not isinstance(e, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            raise InstanceError(line, where, "expected a list of integers")
        if not e:
            raise InstanceError(line, where, "empty edge")
        if len(set(e)) != len(e):
            raise InstanceError(line, where, "repeated vertex")
        if any(not 1 <= x <= n for x in e):
            raise InstanceError(line, where, f"vertex outside 1..{n}")
        masks.append(vset(e))
    warnings = []
    if len(set(masks)) != len(masks) or not is_antichain(list(set(masks))):
        if strict:
            raise InstanceError(line, "edges", "edges do not form an antichain")
        warnings.append("edges minimalized to an antichain")
    ident = obj.get("id", "")
    if not isinstance(ident, str):
        raise InstanceError(line, "id", "expected a string")
    labels = obj.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise InstanceError(line, "labels", f"expected a list of {n} labels")
    return Instance(Clutter(n, minimalize(masks)), ident, labels, warnings)


def parse_lines(lines, strict: bool = False) -> list[Instance]:
    out = []
    for lineno, raw in enumerate(lines, 1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(lineno, "<json>", exc.msg) from None
        inst = _parse_object(obj, lineno, strict)
        if not inst.id:
            inst.id = f"line{lineno}"
        out.append(inst)
    return out


def parse(path: Union[str, Path], strict: bool = False) -> list[Instance]:
    with open(path, encoding="utf-8") as fh:
        return parse_lines(fh, strict)


def instance_line(C: Clutter, ident: str = "", labels=None) -> str:
    obj: dict = {}
    if ident:
        obj["id"] = ident
    obj["n"] = C.n
    obj["edges"] = C.edge_lists()
    if labels is not None:
        obj["labels"] = labels
    return json.dumps(obj, separators=(", ", ": "))


def serialize(instances: Sequence[Union[Clutter, Instance]], path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for item in instances:
            if isinstance(item, Instance):
                fh.write(instance_line(item.clutter, item.id, item.labels) + "\n")
            else:
                fh.write(instance_line(item) + "\n")


# -- random generation -----------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    """``mode="uniform"``: every ``d``-subset kept with probability ``p``.
    ``mode="mixed"``: a subset of size ``k`` kept with probability ``size_probs[k - 1]``.
    """

    n: int
    mode: str = "uniform"
    d: int = 2
    p: float = 0.5
    size_probs: tuple = (0.05, 0.3, 0.1, 0.05)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"n must lie in 0..{MAX_VERTICES}")
        if self.mode not in ("uniform", "mixed"):
            raise ValueError("mode must be 'uniform' or 'mixed'")
        if self.mode == "uniform":
            if not 1 <= self.d <= max(self.n, 1):
                raise ValueError("edge size d must lie in 1..n")
            if not 0.0 <= self.p <= 1.0:
                raise ValueError("probability p must lie in [0, 1]")
        elif any(not 0.0 <= q <= 1.0 for q in self.size_probs):
            raise ValueError("size probabilities must lie in [0, 1]")


def random_clutter(config: GeneratorConfig, rng: Union[random.Random, int, None] = None) -> Clutter:
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    n = config.n
    if config.mode == "uniform":
        sizes = {config.d: config.p}
    else:
        sizes = {k + 1: q for k, q in enumerate(config.size_probs) if k + 1 <= n}
    picked = []
    for k in sorted(sizes):
        q = sizes[k]
        for combo in combinations(range(1, n + 1), k):
            # always draw, so the stream does not depend on earlier outcomes
            if rng.random() < q:
                picked.append(vset(combo))
    return Clutter(n, minimalize(picked))


def random_instances(seed: int, count: int, n_min: int = 2, n_max: int = 8,
                     mode: str = "both", p_range=(0.2, 0.6)) -> list[Instance]:
    """A reproducible batch mixing graphs and mixed-size clutters.

    ``mode`` is ``"uniform"`` (graphs), ``"mixed"`` or ``"both"`` (alternating).
    """
    if n_min > n_max:
        raise ValueError("n_min exceeds n_max")
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(n_min, n_max)
        kind = mode if mode != "both" else ("uniform" if k % 2 == 0 else "mixed")
        if kind == "uniform":
            cfg = GeneratorConfig(n, "uniform", 2, rng.uniform(*p_range))
        else:
            cfg = GeneratorConfig(n, "mixed", size_probs=(0.05, rng.uniform(0.1, 0.4), 0.1, 0.05))
        out.append(Instance(random_clutter(cfg, rng), f"s{seed}-{k}"))
    return out


def random_ideal_pairs(seed: int, count: int, n_min: int = 2, n_max: int = 6):
    """Pairs of clutters on a shared vertex count, each with at least one edge."""
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        n = rng.randint(n_min, n_max)
        cfg = GeneratorConfig(n, "mixed", size_probs=(0.05, 0.3, 0.15, 0.05))
        a, b = random_clutter(cfg, rng), random_clutter(cfg, rng)
        if a.edges and b.edges:
            pairs.append((a, b))
    return pairs


# -- exhaustive enumeration ------------------------------------------------


def all_clutters(n: int, include_edgeless: bool = True) -> Iterator[Clutter]:
    """Every antichain of nonempty subsets of ``[n]`` (labelled, so no isomorphism reduction)."""
    if n > 5:
        raise ValueError("exhaustive enumeration is limited to n <= 5")
    subsets = sorted(range(1, 1 << n), key=set_key)

    def extend(start: int, chosen: list[int]) -> Iterator[Clutter]:
        if chosen or include_edgeless:
            yield Clutter(n, tuple(chosen))
        for i in range(start, len(subsets)):
            s = subsets[i]
            if any(c & s == c or c & s == s for c in chosen):
                continue
            chosen.append(s)
            yield from extend(i + 1, chosen)
            chosen.pop()

    yield from extend(0, [])


def all_clutters_up_to(max_n: int, include_edgeless: bool = True) -> list[Instance]:
    out = []
    for n in range(1, max_n + 1):
        for k, C in enumerate(all_clutters(n, include_edgeless)):
            out.append(Instance(C, f"all{n}-{k}"))
    return out
