"""Scalars, graded Fock spaces and sparse operator algebra."""

from dualhahn.opalg.operator import (
    Operator,
    RelationVerdict,
    SpaceMismatchError,
    Verdict,
    anticommutator,
    commutator,
    compose,
    is_zero_on_window,
    kron_embed,
)
from dualhahn.opalg.scalar import Backend, Basis, GaussianRational, I, as_scalar, format_scalar
from dualhahn.opalg.space import DimensionError, GradedSpace, SafeWindow, make_space
from dualhahn.opalg.sparse import ExactMatrix, FloatMatrix

__all__ = [
    "Backend",
    "Basis",
    "DimensionError",
    "ExactMatrix",
    "FloatMatrix",
    "GaussianRational",
    "GradedSpace",
    "I",
    "Operator",
    "RelationVerdict",
    "SafeWindow",
    "SpaceMismatchError",
    "Verdict",
    "anticommutator",
    "as_scalar",
    "commutator",
    "compose",
    "format_scalar",
    "is_zero_on_window",
    "kron_embed",
    "make_space",
]
