"""Configuration model for k-uniform hypergraphs (comparison baseline)."""

from __future__ import annotations

from .core import DegreeSequence, Hypergraph, check_uniformity, simplicity_report
from .sampler import RngLike, SamplerOutcome, make_rng


def config_model_sample(pi: DegreeSequence, k: int, rng: RngLike) -> SamplerOutcome:
    """Shuffle all half-edges uniformly and cut the result into blocks of ``k``."""
    check_uniformity(k)
    if pi.sigma % k:
        raise ValueError(f"k = {k} does not divide sigma = {pi.sigma}")
    stubs = [v for v, d in enumerate(pi.degrees, start=1) for _ in range(d)]
    make_rng(rng).shuffle(stubs)
    edges = tuple(tuple(sorted(stubs[i:i + k])) for i in range(0, len(stubs), k))
    h = Hypergraph(pi.n, k, edges)
    return SamplerOutcome(h, simplicity_report(h), (), len(edges))
