from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from hyperbox.allocation import BoxAllocation, is_valid_allocation
from hyperbox.core import validate_sequence
from hyperbox.errors import SequenceError
from hyperbox.sampler import allocation_alg3, allocation_alg4, compute_m


def admissible_sequences(k, max_sigma, max_n=8):
    """All admissible non-increasing sequences with sigma <= max_sigma."""
    out = []
    for n in range(1, max_n + 1):
        for combo in combinations_with_replacement(range(max_sigma, 0, -1), n):
            if sum(combo) > max_sigma:
                continue
            try:
                out.append(validate_sequence(combo, k))
            except SequenceError:
                pass
    return out


def brute_force_distribution(pi, alloc):
    """Ball-level enumeration of every draw path, no memoization.

    Balls are distinguishable, each path has weight prod(1/size) and outcomes
    are merged only at the leaves.
    """
    k = len(alloc) - 1
    start = [[v for v, c in box.items() for _ in range(c)] for box in alloc.boxes]
    dist = {}

    def walk(boxes, edges, weight):
        sizes = [len(b) for b in boxes]
        if not any(sizes):
            key = tuple(sorted(edges))
            dist[key] = dist.get(key, 0) + weight
            return
        skip = min(range(k + 1), key=lambda j: (sizes[j], j))
        drawn = [j for j in range(k + 1) if j != skip]

        def pick(i, chosen, boxes, w):
            if i == len(drawn):
                walk(boxes, edges + [tuple(sorted(chosen))], w)
                return
            j = drawn[i]
            for r in range(len(boxes[j])):
                nb = list(boxes)
                nb[j] = boxes[j][:r] + boxes[j][r + 1:]
                pick(i + 1, chosen + [boxes[j][r]], nb, w / len(boxes[j]))

        pick(0, [], boxes, weight)

    walk(start, [], Fraction(1))
    return dist


def hand_case():
    """pi=(2,...,2), k=3, boxes {1,2},{3,4},{5,6},{} (sizes 4,4,4,0)."""
    pi = validate_sequence([2] * 6, 3)
    return pi, BoxAllocation.from_lists([[1, 2], [3, 4], [5, 6], []], pi.degrees)


def oracle_suite():
    """Fixed list of (label, pi, k, alloc) instances with sigma <= 14, k in {3, 4}."""
    cases = []
    pi, alloc = hand_case()
    cases.append(("hand (2^6) k=3", pi, 3, alloc))
    for k in (3, 4):
        for pi in admissible_sequences(k, 12):
            alloc = allocation_alg3(pi, k)
            if is_valid_allocation(alloc, pi, k):
                cases.append((f"alg3 k={k} {pi.degrees}", pi, k, alloc))
            if k == 4:
                alloc4 = allocation_alg4(pi, k, compute_m(pi, k))
                if is_valid_allocation(alloc4, pi, k) and alloc4 != alloc:
                    cases.append((f"alg4 k={k} {pi.degrees}", pi, k, alloc4))
    return cases


@pytest.fixture(scope="session")
def suite():
    return oracle_suite()


ACCEPTANCE_LINES = []


def record_criterion(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
