"""Truncated bosonic x fermionic Fock spaces graded by total boson number."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

DEFAULT_MAX_DIMENSION = 2_000_000
MAX_DIMENSION_ENV = "DUALHAHN_MAX_DIM"
# rough cost of one stored sparse entry (two indices + complex payload)
_BYTES_PER_ENTRY = 32


class DimensionError(MemoryError):
    """Requested space exceeds the configured dimension limit."""

    def __init__(self, dimension: int, limit: int):
        self.dimension = dimension
        self.limit = limit
        self.required_bytes = dimension * _BYTES_PER_ENTRY
        super().__init__(
            f"space dimension {dimension} exceeds limit {limit} "
            f"(~{self.required_bytes / 2**20:.1f} MiB per diagonal operator; "
            f"raise {MAX_DIMENSION_ENV} to allow it)"
        )


def max_dimension() -> int:
    value = os.environ.get(MAX_DIMENSION_ENV)
    return int(value) if value else DEFAULT_MAX_DIMENSION


@dataclass(frozen=True)
class GradedSpace:
    """Tensor product of truncated boson modes and fermion modes.

    Basis states are ordered lexicographically in (boson occupations,
    fermion occupations), boson-major, mode 1 most significant. This is the
    ordering produced by ``kron(boson_1, ..., boson_B, fermion_1, ..., fermion_F)``.
    """

    boson_modes: int
    cutoff: int
    fermion_modes: int

    @property
    def boson_dimension(self) -> int:
        return (self.cutoff + 1) ** self.boson_modes

    @property
    def fermion_dimension(self) -> int:
        return 2**self.fermion_modes

    @property
    def dimension(self) -> int:
        return self.boson_dimension * self.fermion_dimension

    @cached_property
    def grades(self) -> np.ndarray:
        """Total boson occupation of each basis state, in basis order."""
        per_mode = np.arange(self.cutoff + 1)
        boson = np.zeros(1, dtype=np.int64)
        for _ in range(self.boson_modes):
            boson = (boson[:, None] + per_mode[None, :]).ravel()
        return np.repeat(boson, self.fermion_dimension)

    def index(self, bosons, fermions=()) -> int:
        bosons, fermions = tuple(bosons), tuple(fermions)
        if len(bosons) != self.boson_modes or len(fermions) != self.fermion_modes:
            raise ValueError("occupation vector has the wrong number of modes")
        idx = 0
        for n in bosons:
            if not 0 <= n <= self.cutoff:
                raise ValueError(f"boson occupation {n} outside [0, {self.cutoff}]")
            idx = idx * (self.cutoff + 1) + n
        for f in fermions:
            if f not in (0, 1):
                raise ValueError("fermion occupations must be 0 or 1")
            idx = idx * 2 + f
        return idx

    def state(self, index: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        if not 0 <= index < self.dimension:
            raise IndexError(index)
        fermions = []
        for _ in range(self.fermion_modes):
            index, f = divmod(index, 2)
            fermions.append(f)
        bosons = []
        for _ in range(self.boson_modes):
            index, n = divmod(index, self.cutoff + 1)
            bosons.append(n)
        return tuple(reversed(bosons)), tuple(reversed(fermions))

    def basis(self):
        """Iterate occupation pairs in basis order."""
        for bosons in itertools.product(range(self.cutoff + 1), repeat=self.boson_modes):
            for fermions in itertools.product((0, 1), repeat=self.fermion_modes):
                yield bosons, fermions

    def window(self, budget: int) -> np.ndarray:
        """Column indices with grade <= cutoff - budget."""
        if budget < 0:
            raise ValueError("budget must be non-negative")
        return np.flatnonzero(self.grades <= self.cutoff - budget)


@dataclass(frozen=True)
class SafeWindow:
    """Columns on which an expression consuming ``budget`` grade is untruncated."""

    budget: int

    def columns(self, space: GradedSpace) -> np.ndarray:
        return space.window(self.budget)

    def max_grade(self, space: GradedSpace) -> int:
        return space.cutoff - self.budget


def make_space(boson_modes: int, cutoff: int, fermion_modes: int = 0, *, limit: int | None = None) -> GradedSpace:
    if boson_modes < 0 or fermion_modes < 0:
        raise ValueError("mode counts must be non-negative")
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    space = GradedSpace(boson_modes, cutoff, fermion_modes)
    limit = max_dimension() if limit is None else limit
    if space.dimension > limit:
        raise DimensionError(space.dimension, limit)
    return space
