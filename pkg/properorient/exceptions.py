"""
Exception hierarchy shared by every module.
"""

from typing import Optional


class ProperOrientError(Exception):
    """Root of all errors raised by properorient."""


class GraphFormatError(ProperOrientError, ValueError):
    """A graph or orientation file line could not be parsed."""

    def __init__(self, line: Optional[int], message: str):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class PartitionError(ProperOrientError, ValueError):
    """Part index out of range, or an edge joins two vertices of the same part."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class OrientationMismatchError(ProperOrientError, ValueError):
    """An orientation does not cover exactly the edge set of its graph."""


class CapExceededError(ProperOrientError):
    """A desk-scale cap was exceeded; the caller has to shrink the input or raise the cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class NotBipartiteError(ProperOrientError, ValueError):
    """The induced subgraph handed to mis_bipartite has an edge inside one side."""


class InvariantViolation(ProperOrientError):
    """
    A pipeline ledger item or internal precondition failed.

    Attributes:
        invariant_id: Identifier of the failed check, e.g. ``4.hall``
        detail: Offending vertex or edge and the values involved
        dump: Graph file text plus the trace up to the failure
    """

    def __init__(self, invariant_id: str, detail: str, dump: str = ""):
        self.invariant_id = invariant_id
        self.detail = detail
        self.dump = dump
        super().__init__(f"invariant {invariant_id} failed: {detail}")


class ConstructionError(ProperOrientError):
    """The extremal construction could not be built or failed a structural check."""
