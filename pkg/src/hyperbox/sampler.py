"""Edge sampling from a box allocation and the two end-to-end samplers.

Randomness comes from :class:`random.Random` (Mersenne Twister) seeded with
the caller's integer seed. Within a round, boxes are drawn from in ascending
index order, skipping the smallest box, and each draw is
``randrange(box_size)`` over the box's ball list. Fixing that order makes a
seed reproduce the same hypergraph bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .allocation import BoxAllocation, greedy_allocation, is_valid_allocation
from .core import (
    DegreeSequence,
    Edge,
    Hypergraph,
    SimplicityReport,
    check_uniformity,
    simplicity_report,
)
from .errors import AllocationError, EmptyBoxDrawAttempt, InvalidM

RngLike = int | random.Random


def make_rng(rng: RngLike) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    if not isinstance(rng, int) or not 0 <= rng < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {rng!r}")
    return random.Random(rng)


@dataclass(frozen=True)
class SamplerOutcome:
    hypergraph: Hypergraph
    report: SimplicityReport
    allocation_sizes: tuple[int, ...]
    draws: int

    def to_dict(self) -> dict:
        return {
            "n": self.hypergraph.n,
            "k": self.hypergraph.k,
            "edges": self.hypergraph.m,
            "draws": self.draws,
            "allocation_sizes": list(self.allocation_sizes),
            **self.report.to_dict(),
        }


def _ball_lists(alloc: BoxAllocation) -> list[list[int]]:
    out = []
    for box in alloc.boxes:
        balls: list[int] = []
        for v, c in box.items():
            balls.extend([v] * c)
        out.append(balls)
    return out


def sample_edges(pi: DegreeSequence, alloc: BoxAllocation, rng: RngLike,
                 check: bool = True) -> list[Edge]:
    """Draw ``sigma/k`` edges, one ball from each box except the emptiest.

    The skipped box is the lowest-indexed one among those of minimal current
    size. Each ball in a box is equally likely (swap-with-last removal keeps
    every draw O(1)).
    """
    k = len(alloc) - 1
    if check and not is_valid_allocation(alloc, pi, k):
        raise ValueError("boxes are not an admissible allocation for this sequence")
    rng = make_rng(rng)
    randrange = rng.randrange
    balls = _ball_lists(alloc)
    sizes = [len(b) for b in balls]
    idx = range(k + 1)
    edges: list[Edge] = []
    for _ in range(alloc.total // k):
        smallest = min(sizes)
        skip = sizes.index(smallest)
        edge = []
        for j in idx:
            if j == skip:
                continue
            box = balls[j]
            s = sizes[j]
            if s == 0:
                raise EmptyBoxDrawAttempt(
                    f"box {j + 1} is empty while box {skip + 1} is skipped; sizes={sizes}"
                )
            r = randrange(s)
            last = s - 1
            v = box[r]
            box[r] = box[last]
            box.pop()
            sizes[j] = last
            edge.append(v)
        edge.sort()
        edges.append(tuple(edge))
    return edges


def _run(pi: DegreeSequence, k: int, alloc: BoxAllocation, rng: RngLike) -> SamplerOutcome:
    if not is_valid_allocation(alloc, pi, k):
        raise AllocationError(
            f"greedy allocation is not admissible: sizes {list(alloc.sizes)}, "
            f"cap sigma/k = {pi.sigma}/{k}"
        )
    edges = sample_edges(pi, alloc, rng, check=False)
    h = Hypergraph(pi.n, k, tuple(edges))
    return SamplerOutcome(h, simplicity_report(h), alloc.sizes, len(edges))


def allocation_alg3(pi: DegreeSequence, k: int) -> BoxAllocation:
    """Greedy (k+1)-box allocation, relabeled by non-increasing size."""
    check_uniformity(k)
    return greedy_allocation(pi.degrees, k + 1).relabeled_by_size()


def allocation_alg4(pi: DegreeSequence, k: int, m: int) -> BoxAllocation:
    """Tail ``m..n`` greedily into 4 boxes, head ``1..m-1`` into k-3, then relabel."""
    check_uniformity(k, minimum=4)
    if not 1 <= m <= pi.n:
        raise InvalidM(f"m = {m} is outside 1..{pi.n}")
    tail = greedy_allocation(pi.degrees[m - 1:], 4, first_vertex=m)
    head = greedy_allocation(pi.degrees[: m - 1], k - 3, first_vertex=1)
    return BoxAllocation(tail.boxes + head.boxes).relabeled_by_size()


def sample_hypergraph(pi: DegreeSequence, k: int, rng: RngLike) -> SamplerOutcome:
    """Greedy (k+1)-box allocation followed by :func:`sample_edges`.

    Raises :class:`AllocationError` if the relabeled allocation exceeds the
    ``sigma/k`` cap, which cannot happen when ``k(k+1) d_{k+2} <= sigma``.
    """
    return _run(pi, k, allocation_alg3(pi, k), rng)


def compute_m(pi: DegreeSequence, k: int) -> int:
    """Largest ``m`` with ``d_m + ... + d_n >= 4 sigma / (k+1)``."""
    check_uniformity(k, minimum=4)
    target = 4 * pi.sigma
    tail = 0
    for m in range(pi.n, 0, -1):
        tail += pi.degrees[m - 1]
        if (k + 1) * tail >= target:
            return m
    raise AssertionError("m = 1 always qualifies for k >= 3")


def sample_hypergraph_2(pi: DegreeSequence, k: int, m: int | None, rng: RngLike) -> SamplerOutcome:
    """Split allocation (low-degree tail in 4 boxes) followed by :func:`sample_edges`.

    ``m=None`` selects :func:`compute_m`.
    """
    if m is None:
        m = compute_m(pi, k)
    return _run(pi, k, allocation_alg4(pi, k, m), rng)
