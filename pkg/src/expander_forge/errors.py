"""Exception hierarchy shared by all modules."""


class ForgeError(Exception):
    """Base class for every error raised by expander_forge."""


class GraphError(ForgeError, ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, line: int, message: str = "could not parse line"):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SelfLoop(ParseError):
    def __init__(self, line: int):
        super().__init__(line, "self-loop")


class DuplicateEdge(ParseError):
    def __init__(self, line: int):
        super().__init__(line, "duplicate edge")


class ParityError(GraphError):
    pass


class InfeasibleDegree(GraphError):
    pass


class RepairBudgetExceeded(GraphError):
    pass


class OutOfRange(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


class ExactLimitExceeded(ForgeError):
    pass


class ConvergenceFailure(ForgeError):
    """Power iteration did not reach tolerance.

    ``candidate`` holds the best sweep cut of the partially converged vector,
    so callers can still use it as a heuristic candidate.
    """

    def __init__(self, message: str, candidate=None):
        super().__init__(message)
        self.candidate = candidate


class DegenerateInput(ForgeError, ValueError):
    pass


class InternalInvariantViolation(ForgeError, AssertionError):
    pass


class PreconditionViolated(ForgeError, ValueError):
    pass


class HypothesisViolated(ForgeError, ValueError):
    pass


class InvalidProbabilities(ForgeError, ValueError):
    pass


class ClosureFailed(ForgeError):
    def __init__(self, message: str, path=None, report=None):
        super().__init__(message)
        self.path = path
        self.report = report


class NotFound(ForgeError):
    def __init__(self, message: str, failed_pair=None):
        super().__init__(message)
        self.failed_pair = failed_pair


class EmptyPattern(ForgeError, ValueError):
    pass


class InsufficientDensity(ForgeError, ValueError):
    pass


class Degenerate(ForgeError, ValueError):
    pass
