"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ForestModalError(Exception):
    """Base class for all library errors."""


class StructureError(ForestModalError, ValueError):
    """Malformed input: non-total tables, carrier mismatch, unknown node."""


class NotGodelError(ForestModalError, ValueError):
    """Tables are well formed but violate a Gödel algebra (or GAO) law."""

    def __init__(self, report, message: str | None = None):
        self.report = report
        super().__init__(message or str(report))


class PreconditionError(ForestModalError, ValueError):
    """An operation was called on an object outside its domain."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class InvariantError(ForestModalError, AssertionError):
    """An internal invariant failed; indicates a bug or an unvalidated input."""


class TheoremViolation(ForestModalError):
    """A mechanically checked statement turned out false on a concrete instance."""

    def __init__(self, statement: str, detail=None):
        self.statement = statement
        self.detail = detail
        msg = statement if detail is None else f"{statement}: {detail}"
        super().__init__(msg)


class BudgetError(ForestModalError):
    """A search exceeded its node bound or wall-clock cap."""
