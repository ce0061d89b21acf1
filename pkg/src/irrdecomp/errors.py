"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed input or a violated precondition."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ExceptionalGraphError(GraphError):
    """The graph admits no locally irregular decomposition at all."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"exceptional: {reason}")


class SolverFailed(RuntimeError):
    """A heuristic search exhausted its budget without a certified answer."""


class InfeasibleTarget(GraphError):
    """A residue target that no spanning subgraph can meet (class sums disagree)."""


class InsufficientConnectivity(GraphError):
    """The edge connectivity is below what a construction needs."""

    def __init__(self, found: int, required: int):
        self.found = found
        self.required = required
        super().__init__(f"edge connectivity {found} is below the required {required}")
