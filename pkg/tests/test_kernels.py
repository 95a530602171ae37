import os
import random
import subprocess
import sys
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clutterdepth import _pykernels as pure
from clutterdepth import kernels
from clutterdepth.sdepth import Mode, _cover_tables, _search_tables, char_poset
from conftest import nonzero_ideals, seeded_ideals

compiled = kernels.compiled
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def brute_cover(nprimary, nitems, options):
    """Every primary item exactly once, secondary at most once."""
    for k in range(len(options) + 1):
        for pick in combinations(range(len(options)), k):
            count = [0] * (nitems + 1)
            for o in pick:
                for it in options[o]:
                    count[it] += 1
            if all(count[i] == 1 for i in range(1, nprimary + 1)) and max(count[1:], default=0) <= 1:
                return True
    return False


def random_cover_problem(rng):
    nitems = rng.randint(1, 7)
    nprimary = rng.randint(0, nitems)
    options = [sorted(rng.sample(range(1, nitems + 1), rng.randint(1, min(3, nitems))))
               for _ in range(rng.randint(0, 7))]
    off = np.cumsum([0] + [len(o) for o in options]).astype(np.int32)
    flat = np.asarray([i for o in options for i in o], dtype=np.int32)
    return nprimary, nitems, options, off, flat


def test_backend_name():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("seed", range(40))
def test_pure_exact_cover_matches_brute_force(seed):
    rng = random.Random(seed)
    nprimary, nitems, options, off, flat = random_cover_problem(rng)
    status, _, picked = pure.exact_cover(nprimary, nitems, off, flat, -1)
    assert (status == pure.FOUND) == brute_cover(nprimary, nitems, options)
    if status == pure.FOUND:
        hit = [i for k in picked for i in options[k]]
        assert len(hit) == len(set(hit))
        assert set(range(1, nprimary + 1)) <= set(hit)


def test_exact_cover_budget():
    nprimary, nitems = 6, 6
    options = [[i, j] for i in range(1, 7) for j in range(i + 1, 7)]
    off = np.cumsum([0] + [2] * len(options)).astype(np.int32)
    flat = np.asarray([i for o in options for i in o], dtype=np.int32)
    assert pure.exact_cover(nprimary, nitems, off, flat, 1)[0] == pure.OVER_BUDGET


@needs_compiled
@pytest.mark.parametrize("seed", range(60))
def test_exact_cover_backends_agree(seed):
    rng = random.Random(1000 + seed)
    nprimary, nitems, _, off, flat = random_cover_problem(rng)
    a = pure.exact_cover(nprimary, nitems, off, flat, -1)
    b = compiled.exact_cover(nprimary, nitems, off, flat, -1)
    assert a[0] == b[0] and a[1] == b[1] and sorted(a[2]) == sorted(b[2])


@needs_compiled
@given(nonzero_ideals(max_n=6), st.sampled_from(list(Mode)), st.integers(0, 6))
@settings(max_examples=80, deadline=None)
def test_interval_search_backends_agree(I, mode, d):
    P = char_poset(I, mode)
    if d > P.n:
        return
    order, off, cand = _search_tables(P, d)
    a = pure.interval_search(P.member, P.n, d, order, off, cand, 5000)
    b = compiled.interval_search(P.member, P.n, d, order, off, cand, 5000)
    assert a[0] == b[0] and a[1] == b[1]
    assert [tuple(map(int, x)) for x in a[2]] == [tuple(map(int, x)) for x in b[2]]


@needs_compiled
@given(nonzero_ideals(max_n=6), st.sampled_from(list(Mode)), st.integers(1, 6))
@settings(max_examples=80, deadline=None)
def test_count_precheck_backends_agree(I, mode, d):
    P = char_poset(I, mode)
    if d > P.n:
        return
    assert bool(pure.local_counts_feasible(P.member, P.n, d)) == bool(compiled.local_counts_feasible(P.member, P.n, d))


@needs_compiled
def test_cover_tables_backends_agree():
    for I in seeded_ideals(5, 30, 3, 6):
        for mode in Mode:
            P = char_poset(I, mode)
            for d in range(1, P.rank_bound() + 1):
                nprimary, nitems, off, items, _ = _cover_tables(P, d)
                a = pure.exact_cover(nprimary, nitems, off, items, 20000)
                b = compiled.exact_cover(nprimary, nitems, off, items, 20000)
                assert a[0] == b[0] and a[1] == b[1]


@needs_compiled
@pytest.mark.parametrize("p", [2, 3, 7, 2**31 - 1])
def test_rank_mod_p_backends_agree(p):
    rng = random.Random(p)
    for _ in range(20):
        rows = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(rng.randint(1, 6))]
        assert pure.rank_mod_p([r[:] for r in rows], 6, p) == compiled.rank_mod_p([r[:] for r in rows], 6, p)


def test_rank_mod_p_examples():
    assert pure.rank_mod_p([[1, 1], [1, -1]], 2, 2) == 1
    assert pure.rank_mod_p([[1, 1], [1, -1]], 2, 3) == 2
    assert pure.rank_mod_p([[0, 0]], 2, 5) == 0


def test_pure_backend_forced_by_environment():
    env = dict(os.environ, CLUTTERDEPTH_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import clutterdepth; print(clutterdepth.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
