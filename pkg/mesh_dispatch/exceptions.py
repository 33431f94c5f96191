"""Exceptions raised by mesh_dispatch.

Plain argument validation raises :class:`ValueError` directly; the classes
below mark failures that callers usually want to tell apart.
"""


class ModelError(ValueError):
    """The optimization model has no feasible point."""


class ConfigError(ValueError):
    """Configuration document is malformed or violates the schema."""


class NumericError(ArithmeticError):
    """A numerical procedure did not settle."""


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap.

    The best iterate found so far is kept in ``best`` so callers can
    still inspect it.
    """

    def __init__(self, message, best=None, iterations=None):
        super().__init__(message)
        self.best = best
        self.iterations = iterations


class NodeError(RuntimeError):
    """A local solve failed inside a coordination round."""

    def __init__(self, node, error):
        super().__init__("Node {}: {}".format(node, error))
        self.node = node
        self.error = error
