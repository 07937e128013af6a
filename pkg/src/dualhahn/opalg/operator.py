"""Operators on graded spaces with cutoff-safe identity checking.

Every operator carries three integers describing the untruncated operator it
stands for:

``grade_raise`` / ``grade_lower``
    for every nonzero entry ``(r, c)``, ``grade(r) - grade(c)`` lies in
    ``[-grade_lower, grade_raise]``. ``grade_raise`` may be negative (an
    annihilator has raise -1, lower 1).
``climb``
    the truncated matrix agrees with the untruncated operator on every column
    of grade ``<= cutoff - climb``.

For a product ``AB`` the climb is ``max(B.climb, B.grade_raise + A.climb)``:
``B`` must be exact on the column, and ``A`` must be exact on every state
``B`` can reach. A truncated ladder operator is exact wherever no mode is
pushed past the cutoff; a column whose total grade is ``<= cutoff`` has every
mode ``<= cutoff``, which is what makes the total-grade window sound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from dualhahn.opalg.scalar import Backend, GaussianRational
from dualhahn.opalg.space import GradedSpace
from dualhahn.opalg.sparse import ExactMatrix, FloatMatrix


class SpaceMismatchError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Operator:
    space: GradedSpace
    matrix: ExactMatrix | FloatMatrix
    grade_raise: int = 0
    grade_lower: int = 0
    climb: int = 0

    def __post_init__(self):
        n = self.space.dimension
        if self.matrix.shape != (n, n):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match space dimension {n}")

    @property
    def backend(self) -> Backend:
        return Backend.EXACT if isinstance(self.matrix, ExactMatrix) else Backend.FLOAT

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, space: GradedSpace, backend: Backend = Backend.EXACT) -> "Operator":
        kind = ExactMatrix if backend is Backend.EXACT else FloatMatrix
        return cls(space, kind.identity(space.dimension))

    @classmethod
    def zero(cls, space: GradedSpace, backend: Backend = Backend.EXACT) -> "Operator":
        kind = ExactMatrix if backend is Backend.EXACT else FloatMatrix
        return cls(space, kind.zeros((space.dimension, space.dimension)))

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Operator"):
        if not isinstance(other, Operator):
            raise TypeError(f"expected Operator, got {type(other).__name__}")
        if other.space != self.space:
            raise SpaceMismatchError(f"{self.space} vs {other.space}")
        if other.backend is not self.backend:
            raise SpaceMismatchError(f"backend {self.backend.value} vs {other.backend.value}")

    def __matmul__(self, other: "Operator") -> "Operator":
        return compose(self, other)

    def __add__(self, other):
        if _is_scalar(other):
            other = self._scalar_op(other)
        self._check(other)
        return Operator(
            self.space,
            self.matrix + other.matrix,
            max(self.grade_raise, other.grade_raise),
            max(self.grade_lower, other.grade_lower),
            max(self.climb, other.climb),
        )

    __radd__ = __add__

    def __neg__(self):
        return Operator(self.space, -self.matrix, self.grade_raise, self.grade_lower, self.climb)

    def __sub__(self, other):
        if _is_scalar(other):
            other = self._scalar_op(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, value):
        if isinstance(value, Operator):
            return NotImplemented
        if self.backend is Backend.EXACT:
            matrix = self.matrix.scale(GaussianRational.coerce(value))
        else:
            matrix = self.matrix.scale(complex(value))
        return Operator(self.space, matrix, self.grade_raise, self.grade_lower, self.climb)

    __rmul__ = __mul__

    def _scalar_op(self, value) -> "Operator":
        return Operator.identity(self.space, self.backend) * value

    # -- inspection ---------------------------------------------------------
    def entry(self, row: int, col: int):
        return self.matrix.entry(row, col)

    def entries(self):
        return self.matrix.entries()

    def to_dense(self) -> np.ndarray:
        return self.matrix.to_dense()

    def observed_bounds(self) -> tuple[int, int] | None:
        """(raise, lower) recomputed from the stored entries, or None if zero."""
        if self.matrix.nnz == 0:
            return None
        g = self.space.grades
        diff = g[self.matrix.rows] - g[self.matrix.cols]
        return int(diff.max()), int(-diff.min())

    def with_bounds(self, grade_raise: int, grade_lower: int, climb: int) -> "Operator":
        return Operator(self.space, self.matrix, grade_raise, grade_lower, climb)

    def __repr__(self):
        return (f"Operator(dim={self.space.dimension}, nnz={self.nnz}, backend={self.backend.value}, "
                f"raise={self.grade_raise}, lower={self.grade_lower}, climb={self.climb})")


def _is_scalar(value) -> bool:
    return isinstance(value, (int, complex, float, GaussianRational)) or hasattr(value, "denominator")


def compose(a: Operator, b: Operator) -> Operator:
    """Matrix product ``a @ b`` with composed grade bounds."""
    a._check(b)
    return Operator(
        a.space,
        a.matrix @ b.matrix,
        a.grade_raise + b.grade_raise,
        a.grade_lower + b.grade_lower,
        max(b.climb, b.grade_raise + a.climb),
    )


def commutator(a: Operator, b: Operator) -> Operator:
    return compose(a, b) - compose(b, a)


def anticommutator(a: Operator, b: Operator) -> Operator:
    return compose(a, b) + compose(b, a)


def kron_embed(space: GradedSpace, boson_factors, fermion_factors, grade_raise=0, grade_lower=0, climb=0) -> Operator:
    """Operator ``kron(*boson_factors, *fermion_factors)`` on ``space``."""
    factors = list(boson_factors) + list(fermion_factors)
    out = factors[0]
    for f in factors[1:]:
        out = out.kron(f)
    return Operator(space, out, grade_raise, grade_lower, climb)


class Verdict(enum.Enum):
    EXACT_ZERO = "EXACT_ZERO"
    RESIDUAL = "RESIDUAL"
    VACUOUS = "VACUOUS"


@dataclass(frozen=True)
class RelationVerdict:
    verdict: Verdict
    max_abs: float
    budget: int
    window_size: int
    window_max_grade: int
    tolerance: float = 0.0

    @property
    def passed(self) -> bool:
        if self.verdict is Verdict.EXACT_ZERO:
            return True
        if self.verdict is Verdict.VACUOUS:
            return False
        return self.tolerance > 0 and self.max_abs <= self.tolerance

    @property
    def nonzero(self) -> bool:
        """True when the checked expression is demonstrably not zero."""
        if self.verdict is not Verdict.RESIDUAL:
            return False
        return self.max_abs > self.tolerance


def verdict_for_block(block, backend: Backend, budget: int, window_size: int, window_max_grade: int,
                      tolerance: float = 1e-10) -> RelationVerdict:
    if window_size == 0:
        return RelationVerdict(Verdict.VACUOUS, 0.0, budget, 0, window_max_grade, 0.0)
    if backend is Backend.EXACT:
        if block.is_zero():
            return RelationVerdict(Verdict.EXACT_ZERO, 0.0, budget, window_size, window_max_grade, 0.0)
        return RelationVerdict(Verdict.RESIDUAL, block.max_abs(), budget, window_size, window_max_grade, 0.0)
    return RelationVerdict(Verdict.RESIDUAL, block.max_abs(), budget, window_size, window_max_grade, tolerance)


def is_zero_on_window(x: Operator, budget: int, tolerance: float = 1e-10) -> RelationVerdict:
    """Check ``x`` vanishes on the columns of grade ``<= cutoff - budget``.

    EXACT operators give EXACT_ZERO or RESIDUAL; FLOAT operators always give
    RESIDUAL carrying the max modulus, which passes when it is within
    ``tolerance``. An empty window gives VACUOUS, never a pass.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    cols = x.space.window(budget)
    block = x.matrix.columns(cols)
    return verdict_for_block(block, x.backend, budget, cols.size, x.space.cutoff - budget, tolerance)
