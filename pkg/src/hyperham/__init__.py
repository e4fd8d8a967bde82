"""Overlap Hamilton cycles in random k-uniform hypergraphs.

Exact search and counting, closed-form moment formulas with brute-force
verification tables, and reproducible Monte Carlo threshold experiments.
"""

from .core import (
    CapacityError,
    CycleParams,
    DivisibilityError,
    Edge,
    Hamperm,
    HypergraphInstance,
    HyperHamError,
    IntersectionProfile,
    ParamsMismatchError,
    RangeError,
    TooSmallError,
    all_edges_colex,
    canonical_cycle_key,
    canonicalize_edge,
    colex_rank,
    colex_unrank,
    complete_hypergraph,
    hamperm_edges,
    hypergraph_from_edges,
    hypergraph_from_text,
    hypergraph_to_text,
    intersection_profile,
    is_hamperm,
    make_hamperm,
    validate_params,
)
from .harness import (
    CrossingEstimate,
    PancyclicityRecord,
    SweepRecord,
    SweepResult,
    SweepSpec,
    estimate_prob,
    mix_seed,
    pancyclicity_sweep,
    preset,
    sweep,
    wilson_interval,
)
from .model import ModelSpec, sample, sample_sparse
from .oracle import (
    MomentReport,
    NbaTable,
    bound_nba_basic,
    bound_nba_refined,
    brute_force_nba,
    exact_second_moment,
    log_expected_hamperms,
    log_expected_tight_cycles,
    log_end_ratio,
    threshold_constant,
)
from .search import (
    SearchResult,
    count_distinct_cycles,
    count_hamperms,
    find_hamilton,
    has_overlap_hamilton,
    has_tight_cycle_of_length,
    has_tight_hamilton,
    is_pancyclic,
)

__version__ = "0.1.0"
