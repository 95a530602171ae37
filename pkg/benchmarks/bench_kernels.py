"""Compiled vs pure-Python kernels on a fixed, seeded workload.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""
import argparse
import json
import random
import time

from clutterdepth import _pykernels as pure
from clutterdepth import kernels
from clutterdepth.ideal import SquarefreeIdeal
from clutterdepth.sdepth import Mode, _cover_tables, _search_tables, char_poset


# (n, generators, mode, target): seeded ideals whose decision searches run long
SEARCHES = [
    (8, [[1, 2], [1, 3], [1, 6], [2, 4], [2, 5], [2, 6], [2, 7], [3, 4], [3, 5], [3, 6], [3, 7],
         [4, 5], [4, 6], [4, 7], [5, 6], [6, 8]], Mode.IDEAL, 5),
    (7, [[1, 2], [1, 3], [1, 4], [1, 5], [3, 4], [3, 7], [4, 6], [5, 7], [2, 4, 5], [2, 6, 7]], Mode.IDEAL, 5),
    (7, [[1, 6], [2, 6], [1, 2, 3], [1, 2, 4], [2, 3, 5], [2, 3, 7], [2, 4, 5], [2, 4, 7]], Mode.QUOTIENT, 3),
    (8, [[2, 6], [3, 6], [4, 8], [6, 7], [7, 8], [2, 4, 5], [3, 4, 5], [3, 5, 7], [4, 5, 7]], Mode.IDEAL, 6),
    (8, [[1, 3], [3, 4], [1, 2, 5], [1, 2, 7], [1, 5, 6], [1, 6, 7], [2, 4, 5], [2, 4, 7], [4, 5, 6],
         [4, 6, 7]], Mode.IDEAL, 6),
    (8, [[3, 5], [5, 6], [1, 4, 5], [1, 5, 7], [2, 4, 5], [2, 4, 6], [2, 5, 7], [2, 6, 7], [4, 5, 8],
         [5, 7, 8]], Mode.QUOTIENT, 3),
]


def workload():
    """Decision problems and matrices that keep every kernel busy for a measurable time."""
    jobs = [(char_poset(SquarefreeIdeal.from_lists(n, gens), mode), d) for n, gens, mode, d in SEARCHES]
    maximal = char_poset(SquarefreeIdeal(9, tuple(1 << k for k in range(9))), Mode.IDEAL)
    rng = random.Random(7)
    matrices = [[[rng.randint(-1, 1) for _ in range(60)] for _ in range(60)] for _ in range(4)]
    return jobs + [(maximal, 6)], matrices


def bench(impl, jobs, matrices, budget, cover_budget):
    out = {}
    t = time.perf_counter()
    for P, d in jobs:
        order, off, cand = _search_tables(P, d)
        impl.interval_search(P.member, P.n, d, order, off, cand, budget)
    out["interval_search"] = time.perf_counter() - t

    t = time.perf_counter()
    for P, d in jobs:
        nprimary, nitems, off, items, _ = _cover_tables(P, d)
        impl.exact_cover(nprimary, nitems, off, items, cover_budget)
    out["exact_cover"] = time.perf_counter() - t

    t = time.perf_counter()
    for P, _ in jobs:
        for d in range(1, P.n + 1):
            impl.local_counts_feasible(P.member, P.n, d)
    out["local_counts_feasible"] = time.perf_counter() - t

    t = time.perf_counter()
    for rows in matrices:
        impl.rank_mod_p([r[:] for r in rows], len(rows[0]), 32003)
    out["rank_mod_p"] = time.perf_counter() - t
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions (default 3)")
    parser.add_argument("--budget", type=int, default=20_000, help="node cap per search call (default 20000)")
    parser.add_argument("--cover-budget", type=int, default=1_000,
                        help="node cap per exact-cover call; each node is heavy (default 1000)")
    parser.add_argument("--json", default=None, help="also write timings here")
    args = parser.parse_args(argv)

    if kernels.compiled is None:
        print("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`")
        return 1
    jobs, matrices = workload()
    results = {}
    for name, impl in (("python", pure), ("compiled", kernels.compiled)):
        runs = [bench(impl, jobs, matrices, args.budget, args.cover_budget) for _ in range(args.repeat)]
        results[name] = {k: min(r[k] for r in runs) for k in runs[0]}

    print(f"{'kernel':<24}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for k in results["python"]:
        py, c = results["python"][k], results["compiled"][k]
        print(f"{k:<24}{py:>12.4f}{c:>12.4f}{py / max(c, 1e-9):>9.1f}x")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(results, fh, indent=2)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
