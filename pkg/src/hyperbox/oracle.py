"""Exact outcome distribution of :func:`~hyperbox.sampler.sample_edges`.

The draw tree is expanded with exact rational weights. The distribution of
the edges still to be drawn depends only on the current box contents (in
index order, since the skipped box is chosen by index), so sub-results are
memoized on that state and outcomes are aggregated as sorted edge tuples.
"""

from __future__ import annotations

from bisect import insort
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .allocation import BoxAllocation, is_valid_allocation
from .core import DegreeSequence, Hypergraph, simplicity_report
from .errors import EmptyBoxDrawAttempt, TooLarge

DEFAULT_MAX_SIGMA = 14

BoxState = tuple[tuple[tuple[int, int], ...], ...]


def _state_of(alloc: BoxAllocation) -> BoxState:
    return tuple(tuple(sorted((v, c) for v, c in box.items() if c)) for box in alloc.boxes)


def _take(box: tuple[tuple[int, int], ...], v: int) -> tuple[tuple[int, int], ...]:
    return tuple((u, c - 1) if u == v else (u, c) for u, c in box if u != v or c > 1)


def exact_distribution(pi: DegreeSequence, alloc: BoxAllocation,
                       max_sigma: int = DEFAULT_MAX_SIGMA) -> dict[Hypergraph, Fraction]:
    """Map every reachable hypergraph (edges sorted) to its exact probability."""
    k = len(alloc) - 1
    if not is_valid_allocation(alloc, pi, k):
        raise ValueError("boxes are not an admissible allocation for this sequence")
    if pi.sigma > max_sigma:
        raise TooLarge(f"sigma = {pi.sigma} exceeds the enumeration cap {max_sigma}")

    @lru_cache(maxsize=None)
    def remaining(state: BoxState) -> dict[tuple, Fraction]:
        sizes = [sum(c for _, c in box) for box in state]
        if not any(sizes):
            return {(): Fraction(1)}
        skip = sizes.index(min(sizes))
        drawn = [j for j in range(k + 1) if j != skip]
        for j in drawn:
            if sizes[j] == 0:
                raise EmptyBoxDrawAttempt(f"box {j + 1} empty in state {state}")
        out: dict[tuple, Fraction] = {}
        for choice in product(*(state[j] for j in drawn)):
            weight = Fraction(1)
            nxt = list(state)
            for j, (v, c) in zip(drawn, choice):
                weight *= Fraction(c, sizes[j])
                nxt[j] = _take(state[j], v)
            edge = tuple(sorted(v for v, _ in choice))
            for rest, p in remaining(tuple(nxt)).items():
                key = list(rest)
                insort(key, edge)
                key = tuple(key)
                out[key] = out.get(key, 0) + weight * p
        return out

    dist = remaining(_state_of(alloc))
    return {Hypergraph(pi.n, k, edges): p for edges, p in dist.items()}


def exact_simple_probability(pi: DegreeSequence, alloc: BoxAllocation,
                             max_sigma: int = DEFAULT_MAX_SIGMA) -> Fraction:
    dist = exact_distribution(pi, alloc, max_sigma)
    return sum((p for h, p in dist.items() if simplicity_report(h).is_simple), Fraction(0))
