"""Bosonic, fermionic, parabosonic and Clifford generators as operators."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from dualhahn.opalg import (
    Backend,
    Basis,
    ExactMatrix,
    FloatMatrix,
    GaussianRational,
    GradedSpace,
    Operator,
    kron_embed,
)


def mu_number(n: int, mu):
    """``[n]_mu = n + mu * (1 - (-1)**n)``; exact for rational ``mu``."""
    return n + mu * (1 - (-1) ** n)


def _matrix_type(backend: Backend):
    return ExactMatrix if backend is Backend.EXACT else FloatMatrix


def _resolve_backend(basis: Basis, backend: Backend | None) -> Backend:
    if backend is None:
        backend = Backend.EXACT if basis is Basis.ANALYTIC else Backend.FLOAT
    if basis is Basis.ORTHONORMAL and backend is Backend.EXACT:
        raise ValueError("the orthonormal basis has irrational entries; use the FLOAT backend")
    return backend


def _ladder_pair(cutoff: int, weights, basis: Basis, backend: Backend):
    """Single-mode (lowering, raising) matrices for ladder weights ``weights[n] = [n]``."""
    kind = _matrix_type(backend)
    shape = (cutoff + 1, cutoff + 1)
    if basis is Basis.ANALYTIC:
        lower = [(n - 1, n, weights[n]) for n in range(1, cutoff + 1)]
        upper = [(n + 1, n, 1) for n in range(cutoff)]
    else:
        lower = [(n - 1, n, math.sqrt(weights[n])) for n in range(1, cutoff + 1)]
        upper = [(n, n - 1, math.sqrt(weights[n])) for n in range(1, cutoff + 1)]
    return kind.from_entries(shape, lower), kind.from_entries(shape, upper)


def _embed_boson(space: GradedSpace, mode: int, single, backend: Backend, **bounds) -> Operator:
    kind = _matrix_type(backend)
    eye = kind.identity(space.cutoff + 1)
    factors = [single if k == mode else eye for k in range(space.boson_modes)]
    return kron_embed(space, factors, [kind.identity(space.fermion_dimension)], **bounds)


_CREATE = dict(grade_raise=1, grade_lower=-1, climb=1)
_ANNIHILATE = dict(grade_raise=-1, grade_lower=1, climb=0)


@dataclass(frozen=True)
class BosonSet:
    space: GradedSpace
    basis: Basis
    a: tuple[Operator, ...]
    adag: tuple[Operator, ...]

    def number(self, i: int) -> Operator:
        return self.adag[i] @ self.a[i]


@dataclass(frozen=True)
class FermionSet:
    space: GradedSpace
    b: tuple[Operator, ...]
    bdag: tuple[Operator, ...]
    gamma: tuple[Operator, ...]
    gamma_scale: object = 1


@dataclass(frozen=True)
class ParaboseSet:
    space: GradedSpace
    basis: Basis
    mu: tuple
    a: tuple[Operator, ...]
    adag: tuple[Operator, ...]
    R: tuple[Operator, ...]
    flags: tuple[str, ...] = field(default=())


def build_bosons(space: GradedSpace, basis: Basis = Basis.ANALYTIC, backend: Backend | None = None) -> BosonSet:
    if space.boson_modes < 1:
        raise ValueError("space has no boson modes")
    backend = _resolve_backend(basis, backend)
    lower, upper = _ladder_pair(space.cutoff, list(range(space.cutoff + 1)), basis, backend)
    a = tuple(_embed_boson(space, k, lower, backend, **_ANNIHILATE) for k in range(space.boson_modes))
    adag = tuple(_embed_boson(space, k, upper, backend, **_CREATE) for k in range(space.boson_modes))
    return BosonSet(space, basis, a, adag)


def build_fermions(space: GradedSpace, backend: Backend = Backend.EXACT, gamma_scale=1) -> FermionSet:
    """Jordan-Wigner fermions: ``b_i`` carries a parity string over modes ``j < i``.

    ``gamma_scale`` rescales ``gamma_i = gamma_scale * (b_i + b_i^dag)``; the
    default 1 gives ``{gamma_i, gamma_j} = 2 delta_ij``.
    """
    if space.fermion_modes < 1:
        raise ValueError("space has no fermion modes")
    kind = _matrix_type(backend)
    if backend is Backend.EXACT:
        gamma_scale = GaussianRational.coerce(gamma_scale)
    parity = kind.diagonal([1, -1])
    lower = kind.from_entries((2, 2), [(0, 1, 1)])
    upper = kind.from_entries((2, 2), [(1, 0, 1)])
    eye2 = kind.identity(2)
    boson_eye = kind.identity(space.boson_dimension)
    F = space.fermion_modes
    b, bdag, gamma = [], [], []
    for i in range(F):
        lo = kron_embed(space, [boson_eye], [parity] * i + [lower] + [eye2] * (F - i - 1))
        hi = kron_embed(space, [boson_eye], [parity] * i + [upper] + [eye2] * (F - i - 1))
        b.append(lo)
        bdag.append(hi)
        gamma.append((lo + hi) * gamma_scale)
    return FermionSet(space, tuple(b), tuple(bdag), tuple(gamma), gamma_scale)


def build_parabose(space: GradedSpace, mu, basis: Basis = Basis.ANALYTIC, backend: Backend | None = None) -> ParaboseSet:
    """Parabose modes ``[a_i, a_i^dag] = 1 + 2 mu_i R_i`` on independent factors.

    Analytic action: ``a^dag|n> = |n+1>``, ``a|n> = [n]_mu |n-1>``,
    ``R|n> = (-1)^n |n>``.
    """
    mu = tuple(mu)
    if len(mu) != space.boson_modes:
        raise ValueError(f"need one mu per boson mode ({space.boson_modes}), got {len(mu)}")
    backend = _resolve_backend(basis, backend)
    if backend is Backend.EXACT:
        mu = tuple(Fraction(m) if not isinstance(m, Fraction) else m for m in mu)
    flags = []
    for k, m in enumerate(mu):
        if m <= -Fraction(1, 2):
            flags.append(f"mode {k + 1}: mu={m} <= -1/2 lies outside the unitary discrete series")
    if basis is Basis.ORTHONORMAL and any(m < 0 for m in mu):
        bad = [m for m in mu for n in range(1, space.cutoff + 1) if mu_number(n, m) < 0]
        if bad:
            raise ValueError("negative mu-number; orthonormal realization needs [n]_mu >= 0")
    kind = _matrix_type(backend)
    a, adag, R = [], [], []
    for k, m in enumerate(mu):
        weights = [mu_number(n, m) for n in range(space.cutoff + 1)]
        lower, upper = _ladder_pair(space.cutoff, weights, basis, backend)
        refl = kind.diagonal([(-1) ** n for n in range(space.cutoff + 1)])
        a.append(_embed_boson(space, k, lower, backend, **_ANNIHILATE))
        adag.append(_embed_boson(space, k, upper, backend, **_CREATE))
        R.append(_embed_boson(space, k, refl, backend))
    for f in flags:
        warnings.warn(f, stacklevel=2)
    return ParaboseSet(space, basis, mu, tuple(a), tuple(adag), tuple(R), tuple(flags))


def clifford_product(f: FermionSet, indices) -> Operator:
    """``exp(i pi |S| / 4) * gamma_{s_1} ... gamma_{s_k}`` for 0-based ``indices``.

    Exact for even ``|S|`` where the phase is ``i**(|S|/2)``.
    """
    indices = list(indices)
    if not indices:
        raise ValueError("empty index set")
    if len(set(indices)) != len(indices):
        raise ValueError(f"repeated index in {indices}")
    if indices != sorted(indices):
        raise ValueError(f"indices must be ascending, got {indices}")
    k = len(indices)
    exact = f.gamma[0].backend is Backend.EXACT
    if k % 2 == 0:
        phase = _i_power(k // 2)
        phase = phase if exact else complex(phase)
    elif exact:
        raise ValueError("odd |S| gives the irrational phase exp(i pi/4); use the FLOAT backend")
    else:
        phase = cmath.exp(1j * math.pi * k / 4)
    out = f.gamma[indices[0]]
    for idx in indices[1:]:
        out = out @ f.gamma[idx]
    return out * phase


def _i_power(k: int) -> GaussianRational:
    return [GaussianRational(1), GaussianRational(0, 1), GaussianRational(-1), GaussianRational(0, -1)][k % 4]
