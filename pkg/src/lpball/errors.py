"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A distribution parameter is outside its admissible range."""


class DomainError(ValueError):
    """An input point lies outside the mathematical domain of a transform."""


class MomentSpaceError(DomainError):
    """A moment vector is on or outside the moment-space boundary, or the
    underlying Hankel/Toeplitz system is too ill-conditioned to trust.

    ``index`` is the 1-based position of the first offending moment.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class UsageError(ValueError):
    """A request is malformed: unknown name, missing/invalid option,
    insufficient sample, ..."""


class ParseError(ValueError):
    """A data file cannot be parsed.  ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line
