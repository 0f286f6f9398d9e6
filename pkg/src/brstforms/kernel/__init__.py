"""Graded algebra kernel: generators, monomials and exact expressions."""

from ._backend import BACKEND
from .expr import Expr, GradedExpr, const, dvar, gen, mul_all
from .generators import ODD_ROLES, Factor, Gen, Role
from .structure import (
    StructureConstants,
    check_structure_constants,
    levi_civita,
    random_structure_constants,
)

__all__ = [
    "BACKEND", "Expr", "GradedExpr", "const", "dvar", "gen", "mul_all",
    "ODD_ROLES", "Factor", "Gen", "Role", "StructureConstants",
    "check_structure_constants", "levi_civita", "random_structure_constants",
]
