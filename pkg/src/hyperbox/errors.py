"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract, so the grouping matters:
``SequenceError`` -> 1, ``AllocationError`` -> 2, ``InternalInvariantError`` -> 3.
"""


class HyperboxError(Exception):
    """Base class for all package errors."""


class SequenceError(HyperboxError, ValueError):
    """A degree sequence (or a parameter derived from it) is not admissible."""


class NotSorted(SequenceError):
    pass


class NonPositiveEntry(SequenceError):
    pass


class MaxDegreeTooLarge(SequenceError):
    pass


class SigmaNotDivisible(SequenceError):
    pass


class InvalidM(SequenceError):
    pass


class InfeasibleRepair(SequenceError):
    """A sequence generator could not produce an admissible sequence."""


class AllocationError(HyperboxError):
    """The greedy fill put more than sigma/k balls into some box."""


class InternalInvariantError(HyperboxError):
    """A condition that is provably unreachable for valid inputs was hit."""


class EmptyBoxDrawAttempt(InternalInvariantError):
    pass


class TooLarge(HyperboxError):
    """Exact enumeration refused because the instance exceeds the cap."""
