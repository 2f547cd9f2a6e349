"""Exception hierarchy shared by the loaders, oracle and samplers."""


class TriadicError(Exception):
    """Base class for every error raised by this package."""


class EdgeListParseError(TriadicError, ValueError):
    """A line of an edge list could not be parsed."""

    def __init__(self, lineno, line, reason="expected two nonnegative integer labels"):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class GraphCacheError(TriadicError, ValueError):
    """A binary graph cache is truncated, corrupt, or of an unknown version."""


class PreconditionError(TriadicError, ValueError):
    """An operation was called on a graph or vertex that does not meet its requirements."""


class NoWedgesError(PreconditionError):
    """The graph (or the requested vertex set) has no wedges to sample."""


class NoSuchDegreeError(PreconditionError):
    """No vertex of the requested degree exists."""


class DegenerateDegreeError(PreconditionError):
    """Degree below 2 has no wedges, so degree-wise quantities are undefined."""


class EmptyGraphError(PreconditionError):
    """The graph has no vertices."""


class UndefinedStatisticError(PreconditionError):
    """A ratio statistic was requested over an empty set of triangles."""


class InsufficientClosureError(TriadicError, RuntimeError):
    """Triangle sampling hit its wedge budget without finding any closed wedge."""

    def __init__(self, draws, message=None):
        self.draws = draws
        super().__init__(message or f"no closed wedge found in {draws} draws")


class InvalidGraphError(TriadicError, ValueError):
    """A graph failed its structural validation pass."""
