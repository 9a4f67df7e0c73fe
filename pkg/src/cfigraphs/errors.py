"""Shared exception types."""


class GraphFormatError(ValueError):
    """Malformed graph input (JSON or DIMACS), with position diagnostics."""


class SizeGuardError(RuntimeError):
    """An exhaustive routine was asked to run beyond its intended desk scale."""


class StructureError(ValueError):
    """Input violates a structural invariant of the expected construction."""
