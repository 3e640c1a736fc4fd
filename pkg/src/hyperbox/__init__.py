"""Randomized construction of simple k-uniform hypergraphs with a given degree sequence."""

__version__ = "0.1.0"

from .allocation import BoxAllocation, greedy_allocation, is_valid_allocation, lemma1_bound
from .baseline import config_model_sample
from .bounds import (
    BoundValue,
    bound_theorem1,
    bound_theorem2,
    bound_theorem3,
    config_model_loop_lower_bound,
    corollary_conditions,
)
from .core import (
    DegreeSequence,
    Hypergraph,
    SimplicityReport,
    degree_sequence_of,
    simplicity_report,
    validate_sequence,
)
from .oracle import exact_distribution, exact_simple_probability
from .sampler import (
    SamplerOutcome,
    compute_m,
    sample_edges,
    sample_hypergraph,
    sample_hypergraph_2,
)
