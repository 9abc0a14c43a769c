"""Exception types shared across the package."""

from __future__ import annotations


class AccuracyError(RuntimeError):
    """A requested tolerance could not be certified within the budget.

    Carries the best available estimate (natural log scale) and the achieved
    relative tolerance so callers can decide whether to keep the value.
    """

    def __init__(self, message, best=None, achieved=None, required=None):
        super().__init__(message)
        self.best = best
        self.achieved = achieved
        self.required = required


class UnsupportedSpaceError(ValueError):
    """Operation is not defined for the given function space."""


class InfeasibleSpaceError(RuntimeError):
    """The space admits no lacunary construction: inf ||z^n|| stays positive."""

    def __init__(self, message, log_inf=None):
        super().__init__(message)
        self.log_inf = log_inf


class InsufficientDataError(RuntimeError):
    """Too few usable sequence entries to extract a limit estimate."""


class SpecParseError(ValueError):
    """A space or function spec string could not be parsed.

    ``parameter`` names the offending key when one can be identified.
    """

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter
