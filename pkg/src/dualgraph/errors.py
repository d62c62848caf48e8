"""Exception types. The CLI maps each class to an exit code."""


class GraphError(ValueError):
    """Malformed graph, or an id that is not a vertex of the graph."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class InvariantViolation(RuntimeError):
    """A computed configuration contradicts a property that must hold for it."""
