"""Exception hierarchy shared by all metridim modules."""

from __future__ import annotations


class MetridimError(Exception):
    """Base class for every error raised by this package."""


class GraphInputError(MetridimError, ValueError):
    """Malformed graph input (bad vertex ids, loops, size)."""


class SelfLoop(GraphInputError):
    def __init__(self, u: int):
        super().__init__(f"self-loop at vertex {u}")
        self.u = u


class VertexOutOfRange(GraphInputError):
    def __init__(self, u: int, n: int):
        super().__init__(f"vertex {u} outside 0..{n - 1}")
        self.u = u
        self.n = n


class NTooSmall(GraphInputError):
    def __init__(self, n: int, minimum: int = 2):
        super().__init__(f"need at least {minimum} vertices, got {n}")
        self.n = n


class Disconnected(MetridimError):
    """Raised wherever hop distances between all pairs are required."""

    def __init__(self, msg: str = "graph is not connected"):
        super().__init__(msg)


class EmptyLandmarkSet(MetridimError, ValueError):
    pass


class XInR(MetridimError, ValueError):
    pass


class TooLargeForOracle(MetridimError):
    pass


class WOutOfRange(MetridimError, ValueError):
    pass


class DomainError(MetridimError, ValueError):
    pass


class DegenerateP(DomainError):
    pass


class RegimeNotSparse(DomainError):
    pass


class AmbiguousDiameter(MetridimError):
    """The two threshold conditions for the diameter disagree at this margin."""

    def __init__(self, lower: int, upper: int):
        super().__init__(f"diameter prediction ambiguous between {lower} and {upper}")
        self.lower = lower
        self.upper = upper


class NotFound(MetridimError):
    """A heuristic failed to produce a resolving set.

    ``witness`` is an unresolved pair for the last candidate tried, if any.
    """

    def __init__(self, msg: str, *, attempts: int = 0, witness: tuple[int, int] | None = None,
                 candidate: tuple[int, ...] | None = None):
        super().__init__(msg)
        self.attempts = attempts
        self.witness = witness
        self.candidate = candidate


class BudgetExhausted(MetridimError):
    """Exact search hit a node or time cap; ``result`` holds the best set found."""

    def __init__(self, result):
        super().__init__(f"budget exhausted after {result.nodes_explored} nodes; best={result.beta_estimate}")
        self.result = result
