"""Error taxonomy shared across the package.

Two families matter to callers: DefiniteNegative-style outcomes are plain
return values (False / None), never exceptions; the exceptions below mark
either misuse (bad input, violated precondition, oversized instance) or a
surrogate breakdown, i.e. a spot where the finite machinery could not carry
the construction through. The CLI maps breakdowns to exit code 2 and usage
or I/O problems to exit code 3.
"""

from __future__ import annotations


class LabError(Exception):
    """Base class for every error raised by this package."""


class UsageError(LabError):
    """Malformed input, bad flags, unreadable or unparsable files."""


class EmptyFamilyError(LabError):
    """An operation needed at least one member set (e.g. a full intersection)."""


class PreconditionFailedError(LabError):
    """A documented precondition of a procedure does not hold for the input."""


class TooLargeError(LabError):
    """Instance exceeds a brute-force oracle's hard cap."""


class CapExceededError(LabError):
    """An enumeration would produce more items than the configured cap."""


class NotFoundError(LabError):
    """A bounded search ran out of room without an answer."""


class DigestMismatchError(LabError):
    """A certificate's coloring digest does not match the supplied coloring."""


class SurrogateBreakdown(LabError):
    """The finite surrogate machinery failed mid-construction.

    This is the scientifically interesting failure mode: the unbounded
    argument has no analogue of it, so hitting one says the chosen universe,
    margin, or budget was too small for the instance.
    """


class BothFailError(SurrogateBreakdown):
    """Neither a set nor its complement could be adjoined while keeping pfip."""


class ClosureFailedError(SurrogateBreakdown):
    """Semigroup closure exceeded its budget or broke pfip.

    Carries the offending set's members when one is known.
    """

    def __init__(self, message: str, offending: list[int] | None = None):
        super().__init__(message)
        self.offending = offending


class NoWitnessError(SurrogateBreakdown):
    """No witnessing (X, F) pair could be extracted from a failing family."""


class NoColorError(SurrogateBreakdown):
    """Color splitting exhausted every color without finding a large one."""


class StarFailedError(SurrogateBreakdown):
    """The star-set construction produced a set outside the property."""


class GuidedFailedError(SurrogateBreakdown):
    """Guided tree search broke down; exact mode may still succeed."""


class NoTreeError(LabError):
    """Exhaustive search proved no certificate exists for the instance."""
