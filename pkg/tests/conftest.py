import random

from hypothesis import strategies as st

from clutterdepth.clutter import Clutter, minimalize
from clutterdepth.ideal import SquarefreeIdeal


@st.composite
def clutters(draw, min_n=1, max_n=5, min_edges=0):
    n = draw(st.integers(min_n, max_n))
    raw = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=min_edges, max_size=6))
    return Clutter(n, minimalize(raw))


@st.composite
def nonzero_ideals(draw, min_n=1, max_n=5):
    C = draw(clutters(min_n, max_n, min_edges=1))
    return SquarefreeIdeal(C.n, C.edges)


@st.composite
def graphs(draw, min_n=2, max_n=7, min_edges=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(1 << i) | (1 << j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=min_edges, max_size=len(pairs), unique=True))
    return Clutter(n, tuple(chosen))


def seeded_ideals(seed, count, n_min, n_max):
    """Reproducible nonzero ideals with mixed generator sizes."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(n_min, n_max)
        k = rng.randint(1, 6)
        gens = [rng.randrange(1, 1 << n) for _ in range(k)]
        out.append(SquarefreeIdeal(n, minimalize(gens)))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
