"""Exception hierarchy for the nearly convex toolkit."""

from typing import Any, Optional


class NearlyConvexError(Exception):
    """Base class for every domain error raised by the package."""


class EmptySetError(NearlyConvexError):
    """An operation that needs a nonempty set received an empty one."""


class DomainError(NearlyConvexError):
    """Arithmetic left the domain of an expression (e.g. sqrt of a negative)."""


class OutOfDomainError(NearlyConvexError):
    """The base point is not in the domain of the function."""


class NonPositiveScalarError(NearlyConvexError):
    """A scaling factor was not strictly positive."""


class QualificationFailedError(NearlyConvexError):
    """A relative-interior qualification condition does not hold."""


class NotInSumSubdifferentialError(NearlyConvexError):
    """The slope to decompose is not in the epsilon-subdifferential of the sum."""


class PointNotInSetError(NearlyConvexError):
    """The base point does not belong to the set."""


class NoSplitFoundError(NearlyConvexError):
    """A discretized decomposition search found no witness."""

    def __init__(self, message: str, resolution: int):
        super().__init__(f"{message} (resolution {resolution})")
        self.resolution = resolution


class InfeasibleIntersectionError(NearlyConvexError):
    """The feasible set and the domain do not intersect."""


class InfeasiblePointError(NearlyConvexError):
    """The candidate point is not feasible."""


class NotEpsSolutionError(NearlyConvexError):
    """The candidate point is not an epsilon-solution."""


class NotExactSolutionError(NearlyConvexError):
    """The supplied point is not an exact solution of the inner problem."""


class ValueInfiniteError(NearlyConvexError):
    """The optimal value function is not finite where it must be."""


class ParseError(NearlyConvexError):
    """A problem file could not be parsed."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class ValidationError(NearlyConvexError):
    """A function failed the nearly convex validation checks."""

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report
