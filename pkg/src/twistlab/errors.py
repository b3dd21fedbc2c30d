"""Exception types shared across the package."""

from __future__ import annotations


class ConfigurationError(ValueError):
    """Inconsistent or incomplete configuration (bases, numeric values, specs)."""


class FamilyMismatchError(TypeError):
    """Operands belong to different group families."""


class SpecError(ValueError):
    """A job/group/cocycle specification failed validation.

    ``path`` locates the offending field, e.g. ``cocycle.diagonals[2]``.
    """

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class BudgetExceededError(RuntimeError):
    """A search or enumeration hit its node/radius budget.

    Carries the bound reached so callers can downgrade to an inconclusive
    verdict instead of crashing.
    """

    def __init__(self, message: str, nodes: int | None = None, radius: int | None = None):
        super().__init__(message)
        self.nodes = nodes
        self.radius = radius
