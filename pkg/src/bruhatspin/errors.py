"""Exception hierarchy shared by every module.

All domain failures derive from :class:`DomainError` so the CLI can map
them to exit status 1 without catching programming errors.
"""


class DomainError(ValueError):
    """Input is well formed but outside the domain of the operation."""


class NotAPermutationError(DomainError):
    pass


class RankMismatchError(DomainError):
    pass


class NotReducedError(DomainError):
    pass


class ChartDomainError(DomainError):
    """A northwest minor vanished (or went negative) during an LU chart."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class DegeneracyError(DomainError):
    """An entry fell in the ambiguous band between zero and nonzero."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        super().__init__(message)
        self.row = row
        self.col = col


class NotInCellError(DomainError):
    pass


class NotPositiveError(DomainError):
    pass
