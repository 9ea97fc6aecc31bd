"""Exception hierarchy shared by all modules."""


class ToricPhyloError(Exception):
    """Base class for every error raised by this package."""


class InvalidElementError(ToricPhyloError, ValueError):
    """A residue tuple does not belong to the group it is used with."""


class TreeParseError(ToricPhyloError, ValueError):
    """Malformed tree text."""


class DomainError(ToricPhyloError, ValueError):
    """Arguments are well formed but outside the operation's domain."""


class ContainmentError(ToricPhyloError, ValueError):
    """A sublattice was expected to lie inside another one and does not."""


class ResourceLimitError(ToricPhyloError, RuntimeError):
    """A computation would exceed a configured size bound."""
