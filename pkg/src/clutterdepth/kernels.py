"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``CLUTTERDEPTH_PURE=1`` to force the pure-Python kernels.
"""
import os

from . import _pykernels as pure

FOUND = pure.FOUND
EXHAUSTED = pure.EXHAUSTED
OVER_BUDGET = pure.OVER_BUDGET

compiled = None
if os.environ.get("CLUTTERDEPTH_PURE", "") in ("", "0"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

interval_search = _impl.interval_search
rank_mod_p = _impl.rank_mod_p
local_counts_feasible = _impl.local_counts_feasible
exact_cover = _impl.exact_cover
