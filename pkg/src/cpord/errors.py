"""Exception hierarchy shared by all cpord modules."""


class CpordError(Exception):
    """Base class for every error raised by cpord."""


class DomainError(CpordError, ValueError):
    """An operation was applied outside the set where it is defined."""


class ValidationError(CpordError, ValueError):
    """Input data does not satisfy a structural invariant."""


class OrdinalSyntaxError(CpordError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ReconstructionError(CpordError):
    """A probe cannot be explained by a finite set of change points."""


class NotInImageError(CpordError, ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
