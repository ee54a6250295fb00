"""Finite Gödel algebras with modal operators and their forest-frame duals."""

from __future__ import annotations

from .algebra import GodelAlgebra, ViolationReport, validate_godel
from .documents import emit, export_dot, load, parse_document
from .errors import (
    BudgetError,
    ForestModalError,
    InvariantError,
    NotGodelError,
    PreconditionError,
    StructureError,
    TheoremViolation,
)
from .frames import OneRelFrame, TwoRelFrame
from .modal import GAO, classify
from .order import Forest, Poset, Rel, compose

__all__ = [
    "GodelAlgebra",
    "ViolationReport",
    "validate_godel",
    "GAO",
    "classify",
    "Forest",
    "Poset",
    "Rel",
    "compose",
    "OneRelFrame",
    "TwoRelFrame",
    "emit",
    "export_dot",
    "load",
    "parse_document",
    "ForestModalError",
    "StructureError",
    "NotGodelError",
    "PreconditionError",
    "InvariantError",
    "TheoremViolation",
    "BudgetError",
]
