"""Exact Stanley depth, Stanley regularity and combinatorial bounds for edge ideals of clutters."""
from .bounds import (
    BoundReport,
    ReportOptions,
    bound_report,
    cochord,
    ds_bound,
    edgewise_domination_index,
    induced_matching,
    is_chordal,
    is_cochordal,
    lm_bound,
    matching_numbers,
    min_two_collage,
    subadditivity_report,
)
from .clutter import Clutter, contract, reduce, relabel
from .homology import betti_table, homological_invariants, parse_field
from .ideal import (
    SquarefreeIdeal,
    alexander_dual,
    cosize,
    edge_ideal,
    ideal_intersection,
    ideal_sum,
    size,
    split_decompose,
)
from .kernels import BACKEND
from .sdepth import Mode, Status, brute_oracle_sdepth, char_poset, sdepth_decision, stanley_depth, stanley_regularity

__version__ = "0.1.0"
