"""Minimal transversals of tripartite 3-uniform hypergraphs."""

from .enumeration import (
    Branch,
    BranchReport,
    TransversalSet,
    audit_measure_drops,
    branch_enumerate,
    descendant,
    enumerate_oracle,
    is_minimal_transversal,
    is_transversal,
    validate_complete_family,
)
from .generators import gen_cyclic_latin, gen_h15, gen_matching, gen_theorem1
from .h3io import H3ParseError, parse, serialize
from .hypergraph import (
    ALPHA,
    Condition,
    RejectedConditionError,
    TripartiteHypergraph,
    apply_condition,
    degree2,
    degree3,
    disjoint_union,
    max_2edge_matching,
    measure,
    validate,
)
from .tau import case_taus, certify_mu_bounded, optimize_alpha, solve_tau

__version__ = "0.1.0"
