"""Exception hierarchy for groupcover."""

from __future__ import annotations


class GroupCoverError(Exception):
    """Base class for every error raised by this package."""


class CapExceeded(GroupCoverError):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class LatticeCapExceeded(CapExceeded):
    pass


class CapError(CapExceeded):
    """A group expression asks for a group outside the DSL limits."""


class InvalidPermutation(GroupCoverError):
    pass


class InvalidTable(GroupCoverError):
    pass


class NotNormal(GroupCoverError):
    pass


class ForeignSubgroup(GroupCoverError):
    pass


class DescriptorMismatch(GroupCoverError):
    pass


class EmptyMaximalList(GroupCoverError):
    pass


class CyclicGroupError(GroupCoverError):
    """Raised where a cover is requested for a cyclic group (none exists)."""


class TargetMismatch(GroupCoverError):
    pass


class NotMinimal(GroupCoverError):
    pass


class BadQuotients(GroupCoverError):
    pass


class NotVerified(GroupCoverError):
    pass


class WrongSize(GroupCoverError):
    pass


class PreconditionViolated(GroupCoverError):
    pass


class ExprSyntaxError(GroupCoverError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
