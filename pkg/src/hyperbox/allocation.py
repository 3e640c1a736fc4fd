"""Greedy distribution of degree "balls" into boxes.

Every vertex contributes ``d_i`` indistinguishable balls. A box is a multiset
of balls stored as a ``{vertex: count}`` map, so box size and per-vertex
bookkeeping are O(1) regardless of how large the degrees are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import DegreeSequence


@dataclass(frozen=True)
class BoxAllocation:
    """An ordered tuple of boxes; treat the per-box dicts as read-only."""

    boxes: tuple[dict[int, int], ...]
    sizes: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        boxes = tuple(dict(b) for b in self.boxes)
        object.__setattr__(self, "boxes", boxes)
        object.__setattr__(self, "sizes", tuple(sum(b.values()) for b in boxes))

    def __len__(self) -> int:
        return len(self.boxes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def relabeled_by_size(self) -> BoxAllocation:
        """Boxes in non-increasing size order; ties keep their current order."""
        order = sorted(range(len(self.boxes)), key=lambda j: -self.sizes[j])
        return BoxAllocation(tuple(self.boxes[j] for j in order))

    def max_degree(self, j: int) -> int:
        """Largest multiplicity in box ``j`` (0 for an empty box)."""
        return max(self.boxes[j].values(), default=0)

    def to_json(self) -> dict[str, dict[str, int]]:
        # 1-based box indices to match vertex numbering in all I/O
        return {
            str(j + 1): {str(v): c for v, c in box.items()} for j, box in enumerate(self.boxes)
        }

    @classmethod
    def from_lists(cls, boxes: Sequence[Sequence[int] | Mapping[int, int]],
                   degrees: Sequence[int] | None = None) -> BoxAllocation:
        """Build boxes from vertex lists (each vertex gets its full degree) or count maps."""
        out = []
        for box in boxes:
            if isinstance(box, Mapping):
                out.append(dict(box))
            else:
                if degrees is None:
                    raise ValueError("degrees are required when boxes are given as vertex lists")
                out.append({v: degrees[v - 1] for v in box})
        return cls(tuple(out))


def greedy_allocation(degrees: Sequence[int], ell: int, first_vertex: int = 1) -> BoxAllocation:
    """Place each vertex's balls, in the given order, into the least-full box.

    Ties go to the lowest box index. Vertex ids are ``first_vertex`` onwards,
    which lets a suffix ``(d_m, ..., d_n)`` keep its original ids ``m..n``.
    """
    if ell < 1:
        raise ValueError(f"number of boxes must be >= 1, got {ell}")
    boxes: list[dict[int, int]] = [{} for _ in range(ell)]
    sizes = [0] * ell
    for offset, d in enumerate(degrees):
        j = sizes.index(min(sizes))
        boxes[j][first_vertex + offset] = d
        sizes[j] += d
    return BoxAllocation(tuple(boxes))


def is_valid_allocation(alloc: BoxAllocation, pi: DegreeSequence, k: int) -> bool:
    """Membership test for the admissible (k+1)-box allocations of ``pi``."""
    if len(alloc) != k + 1:
        return False
    seen: set[int] = set()
    for box in alloc.boxes:
        for v, c in box.items():
            if v in seen or not 1 <= v <= pi.n or c != pi.degrees[v - 1]:
                return False
            seen.add(v)
    if len(seen) != pi.n:
        return False
    sizes = alloc.sizes
    if any(sizes[j] < sizes[j + 1] for j in range(len(sizes) - 1)):
        return False
    return k * sizes[0] <= pi.sigma


def lemma1_bound(pi: DegreeSequence | Sequence[int], ell: int) -> int:
    """Integer (ceiling) form of the greedy box-size bound, for display."""
    degrees = tuple(pi)
    sigma = sum(degrees)
    d_next = degrees[ell] if ell < len(degrees) else 0
    return max(degrees[0], -(-sigma // ell) + d_next)


def lemma1_holds(alloc: BoxAllocation, pi: DegreeSequence | Sequence[int], ell: int) -> bool:
    """Exact check of ``|B_i| <= max(d_1, sigma/ell + d_{ell+1})`` for every box."""
    degrees = tuple(pi)
    sigma = sum(degrees)
    d_next = degrees[ell] if ell < len(degrees) else 0
    cap = max(ell * degrees[0], sigma + ell * d_next)
    return all(ell * s <= cap for s in alloc.sizes)
