"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: domain errors exit with 2,
consistency errors with 3.
"""


class BraessLabError(Exception):
    """Base class for all errors raised by braesslab."""


class InvalidParameterError(BraessLabError, ValueError):
    """An argument lies outside the documented domain."""


class DisconnectedGraphError(BraessLabError, ValueError):
    """The operation needs a connected graph.

    ``components`` lists the vertex sets of the connected components.
    """

    def __init__(self, message="graph is disconnected", components=None):
        self.components = [sorted(c) for c in components] if components else []
        if self.components:
            shown = "; ".join("{" + ", ".join(map(str, c)) + "}" for c in self.components)
            message = f"{message}: components {shown}"
        super().__init__(message)


class EdgeListParseError(BraessLabError, ValueError):
    """Malformed edge-list input. ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OracleBoundError(BraessLabError, ValueError):
    """The brute-force oracle refuses graphs above its size bound."""


class ConsistencyError(BraessLabError, AssertionError):
    """Two independent computations disagree. Indicates a bug."""


class NumericError(BraessLabError, ArithmeticError):
    """The floating-point eigen-solver failed."""
