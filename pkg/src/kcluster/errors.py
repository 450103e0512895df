"""Exception hierarchy shared by every kcluster module."""


class KClusterError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(KClusterError):
    """Malformed instance document."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


class NotProperError(KClusterError):
    """A realization contains an interval strictly inside another one.

    ``witness`` holds the (container, contained) pair as 1-based input indices.
    """

    def __init__(self, witness: tuple[int, int]):
        self.witness = witness
        outer, inner = witness
        super().__init__(
            f"realization is not proper: interval {outer} strictly contains interval {inner}"
        )


class StructureError(KClusterError):
    """A reach vector violates the invariants required by an operation."""


class BudgetError(KClusterError):
    """An exhaustive computation would exceed its configured budget."""


class ReconstructionError(KClusterError):
    """The DP table cannot produce a witness for the requested terminal state."""
