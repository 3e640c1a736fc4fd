"""Degree sequences, k-uniform multi-hypergraphs and simplicity diagnostics.

Vertices are 1-based everywhere (``1..n``), so vertex ``i`` has prescribed
degree ``degrees[i - 1]``. Edges are multisets of vertices, stored as sorted
tuples so that two edges compare equal iff they have the same content.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    MaxDegreeTooLarge,
    NonPositiveEntry,
    NotSorted,
    SequenceError,
    SigmaNotDivisible,
)

Edge = tuple[int, ...]


def check_uniformity(k: int, minimum: int = 3) -> int:
    if not isinstance(k, int) or k < minimum:
        raise ValueError(f"uniformity k must be an integer >= {minimum}, got {k!r}")
    return k


def make_edge(vertices: Iterable[int]) -> Edge:
    """Canonical form of an edge: its vertices sorted ascending."""
    return tuple(sorted(vertices))


@dataclass(frozen=True)
class DegreeSequence:
    """A validated, non-increasing sequence of positive degrees.

    Build instances with :func:`validate_sequence`; the constructor only checks
    the structural invariants (sorted, positive), not k-admissibility.
    """

    degrees: tuple[int, ...]
    sigma: int = field(init=False)

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        if not degrees:
            raise SequenceError("degree sequence must contain at least one entry")
        for i in range(1, len(degrees)):
            if degrees[i] > degrees[i - 1]:
                raise NotSorted(
                    f"d_{i + 1}={degrees[i]} > d_{i}={degrees[i - 1]}; "
                    "degrees must be non-increasing"
                )
        if degrees[-1] < 1:
            raise NonPositiveEntry(
                f"d_{len(degrees)}={degrees[-1]}; all degrees must be >= 1"
            )
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "sigma", sum(degrees))

    @property
    def n(self) -> int:
        return len(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def d(self, i: int) -> int:
        """Degree of vertex ``i`` (1-based); 0 for indices beyond ``n``."""
        if i < 1:
            raise IndexError(i)
        return self.degrees[i - 1] if i <= len(self.degrees) else 0


def validate_sequence(degrees: Sequence[int], k: int) -> DegreeSequence:
    """Check that ``degrees`` is admissible for k-uniform realization.

    Checks run in a fixed order and the first failure is raised: non-increasing,
    all entries >= 1, ``k * d_1 <= sigma``, ``k`` divides ``sigma``.
    """
    check_uniformity(k)
    seq = DegreeSequence(tuple(degrees))
    if k * seq.degrees[0] > seq.sigma:
        raise MaxDegreeTooLarge(
            f"k*d_1 = {k * seq.degrees[0]} exceeds sigma = {seq.sigma}"
        )
    if seq.sigma % k:
        raise SigmaNotDivisible(
            f"sigma = {seq.sigma} is not divisible by k = {k}"
        )
    return seq


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform multi-hypergraph on vertices ``1..n``.

    ``edges`` keeps generation order; use :meth:`canonical` for a
    representation that ignores edge order.
    """

    n: int
    k: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(make_edge(e) for e in self.edges)
        for e in edges:
            if len(e) != self.k:
                raise ValueError(f"edge {e} has cardinality {len(e)}, expected {self.k}")
            if e and (e[0] < 1 or e[-1] > self.n):
                raise ValueError(f"edge {e} has a vertex outside 1..{self.n}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def canonical(self) -> Hypergraph:
        return Hypergraph(self.n, self.k, tuple(sorted(self.edges)))


@dataclass(frozen=True)
class SimplicityReport:
    loop_count: int
    parallel_pair_count: int

    @property
    def is_simple(self) -> bool:
        return self.loop_count == 0 and self.parallel_pair_count == 0

    def to_dict(self) -> dict:
        return {
            "loop_count": self.loop_count,
            "parallel_pair_count": self.parallel_pair_count,
            "is_simple": self.is_simple,
        }


def degree_sequence_of(h: Hypergraph) -> list[int]:
    """Positional degrees ``deg(1)..deg(n)``, loops counted with multiplicity."""
    deg = [0] * h.n
    for e in h.edges:
        for v in e:
            deg[v - 1] += 1
    return deg


def is_loop(edge: Edge) -> bool:
    # canonical edges are sorted, so repeated vertices are adjacent
    return any(edge[i] == edge[i - 1] for i in range(1, len(edge)))


def simplicity_report(h: Hypergraph) -> SimplicityReport:
    loops = sum(1 for e in h.edges if is_loop(e))
    parallel = sum(c * (c - 1) // 2 for c in Counter(h.edges).values())
    return SimplicityReport(loops, parallel)


# -- text formats -----------------------------------------------------------


def parse_sequence(text: str) -> list[int]:
    """Parse the one-line, whitespace-separated degree-sequence format."""
    tokens = text.split()
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise SequenceError(f"degree sequence contains a non-integer token: {exc}") from None


def read_sequence(path: str | Path) -> list[int]:
    return parse_sequence(Path(path).read_text())


def format_sequence(degrees: Iterable[int]) -> str:
    return " ".join(str(d) for d in degrees) + "\n"


def format_edges(h: Hypergraph) -> str:
    """One edge per line, vertices 1-based in canonical order, generation order kept."""
    return "".join(" ".join(str(v) for v in e) + "\n" for e in h.edges)


def parse_edges(text: str, n: int | None = None) -> Hypergraph:
    edges = [tuple(int(t) for t in line.split()) for line in text.splitlines() if line.strip()]
    if not edges:
        raise ValueError("edge list is empty")
    k = len(edges[0])
    if n is None:
        n = max(max(e) for e in edges)
    return Hypergraph(n, k, tuple(edges))
