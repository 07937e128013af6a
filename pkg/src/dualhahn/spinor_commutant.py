"""Spinorial oscillator model: o(n) angular momenta and the commutant of o(m) + o(m').

On ``n = m + m'`` boson modes tensored with ``n`` fermion modes::

    L_uv = a_u^dag a_v - a_u a_v^dag
    Sigma_uv = 1/2 gamma_u gamma_v
    J_uv = -i (L_uv + Sigma_uv)
    H = 1/2 sum_i {a_i^dag, a_i}

The first ``m`` modes form block one and the remaining ``m'`` block two. The
operators commuting with the rotations inside each block include::

    K1 = 1/2 (sum_{block one} N_i - sum_{block two} N_i)
    K2 = 2 (sum_{u<v} L_uv Sigma_uv - (n - 1)/4)
    K3 = [K1, K2]
    r = P^{block one},   R = P^{all modes}

where ``P^S`` is the Clifford product of :func:`dualhahn.oscillators.clifford_product`.
For ``(m, m') = (2, 2)`` the shift is ``3/4`` and ``R = P^{12} P^{34}``. The
general shift ``(n - 1)/4`` is the value for which ``K2 R`` reproduces the
osp(1|2) Casimir of all modes (see :mod:`dualhahn.howe`); for other
partitions the closure checks are informational.

Indices in this module are 1-based, as in the formulas above.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from dualhahn.opalg import (
    Backend,
    Basis,
    GaussianRational,
    Operator,
    anticommutator,
    as_scalar,
    commutator,
    make_space,
)
from dualhahn.oscillators import BosonSet, FermionSet, build_bosons, build_fermions, clifford_product
from dualhahn.presentations.model import builtin_presentation, o_n_presentation
from dualhahn.presentations.verify import (
    RealizationMap,
    RelationReport,
    check_display,
    check_identities,
    evaluate,
    mark,
    merge_reports,
    verify,
)

MINUS_I = GaussianRational(0, -1)


@dataclass(frozen=True)
class SpinorModel:
    m: int
    mprime: int
    bosons: BosonSet
    fermions: FermionSet
    L: dict
    Sigma: dict
    J: dict
    H: Operator

    @property
    def n(self) -> int:
        return self.m + self.mprime

    @property
    def space(self):
        return self.H.space

    @property
    def backend(self) -> Backend:
        return self.H.backend

    @property
    def blocks(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(range(1, self.m + 1)), tuple(range(self.m + 1, self.n + 1))

    def pairs(self):
        return list(itertools.combinations(range(1, self.n + 1), 2))

    def number(self, i: int) -> Operator:
        return self.bosons.number(i - 1)

    def scalar(self, value):
        return as_scalar(value, self.backend)


@dataclass(frozen=True)
class CommutantGenerators:
    K1: Operator
    K2: Operator
    K3: Operator
    r: Operator
    R: Operator
    shift: Fraction


def build_spinor_model(m: int = 2, mprime: int = 2, cutoff: int = 4, backend: Backend = Backend.EXACT,
                       basis: Basis = Basis.ANALYTIC, gamma_scale=1) -> SpinorModel:
    """Build ``L, Sigma, J, H`` on ``(cutoff+1)^n * 2^n`` states.

    Both block sizes must be even and at least 2 so the Clifford products of
    each block carry rational phases.
    """
    for size in (m, mprime):
        if size < 2 or size % 2:
            raise ValueError(f"block sizes must be even and >= 2, got ({m}, {mprime})")
    n = m + mprime
    space = make_space(n, cutoff, n)
    bos = build_bosons(space, basis, backend)
    fer = build_fermions(space, backend, gamma_scale)
    half = as_scalar(Fraction(1, 2), backend)
    mi = as_scalar(MINUS_I, backend)
    L, Sigma, J = {}, {}, {}
    for u, v in itertools.combinations(range(1, n + 1), 2):
        L[u, v] = bos.adag[u - 1] @ bos.a[v - 1] - bos.a[u - 1] @ bos.adag[v - 1]
        Sigma[u, v] = (fer.gamma[u - 1] @ fer.gamma[v - 1]) * half
        J[u, v] = (L[u, v] + Sigma[u, v]) * mi
    H = anticommutator(bos.adag[0], bos.a[0])
    for i in range(1, n):
        H = H + anticommutator(bos.adag[i], bos.a[i])
    return SpinorModel(m, mprime, bos, fer, L, Sigma, J, H * half)


def k2_shift(n: int) -> Fraction:
    return Fraction(n - 1, 4)


def build_commutant(model: SpinorModel) -> CommutantGenerators:
    block1, block2 = model.blocks
    half = model.scalar(Fraction(1, 2))
    k1 = sum((model.number(i) for i in block1[1:]), model.number(block1[0]))
    k1 = k1 - sum((model.number(i) for i in block2[1:]), model.number(block2[0]))
    K1 = k1 * half
    pairs = model.pairs()
    total = model.L[pairs[0]] @ model.Sigma[pairs[0]]
    for p in pairs[1:]:
        total = total + model.L[p] @ model.Sigma[p]
    shift = k2_shift(model.n)
    K2 = (total - model.scalar(shift)) * model.scalar(2)
    K3 = commutator(K1, K2)
    r = clifford_product(model.fermions, [i - 1 for i in block1])
    R = clifford_product(model.fermions, list(range(model.n)))
    return CommutantGenerators(K1, K2, K3, r, R, shift)


# -- o(n) checks ----------------------------------------------------------------

def _o_n_assignment(model: SpinorModel, family: dict, factor) -> dict:
    return {f"l{u}_{v}": op * factor for (u, v), op in family.items()}


def check_o_n(model: SpinorModel, which: str = "J", tolerance: float = 1e-10, jobs: int = 1) -> RelationReport:
    """Every instance of the o(n) bracket for ``-iL``, ``-iSigma`` or ``J``."""
    mi = model.scalar(MINUS_I)
    if which == "L":
        assignment = _o_n_assignment(model, model.L, mi)
    elif which == "Sigma":
        assignment = _o_n_assignment(model, model.Sigma, mi)
    elif which == "J":
        assignment = _o_n_assignment(model, model.J, model.scalar(1))
    else:
        raise ValueError(f"unknown generator family {which!r}")
    rmap = RealizationMap(o_n_presentation(model.n), assignment)
    rep = verify(rmap, tolerance, jobs=jobs)
    return RelationReport(f"o_{model.n}[{which}]", rep.results, rep.meta)


# -- commutant -------------------------------------------------------------------

def _named(model: SpinorModel, gens: CommutantGenerators) -> dict[str, Operator]:
    out = {"K1": gens.K1, "K2": gens.K2, "K3": gens.K3, "r": gens.r, "R": gens.R, "H": model.H}
    for (u, v), op in model.J.items():
        out[f"J{u}{v}" if model.n < 10 else f"J{u}_{v}"] = op
    return out


def _block_rotations(model: SpinorModel) -> list[str]:
    names = []
    for block in model.blocks:
        for u, v in itertools.combinations(block, 2):
            names.append(f"J{u}{v}" if model.n < 10 else f"J{u}_{v}")
    return names


def check_commutant_property(model: SpinorModel, gens: CommutantGenerators, tolerance: float = 1e-10,
                             jobs: int = 1) -> RelationReport:
    """``[X, Y] = 0`` for ``X`` in ``K1, K2, K3, r, R`` and ``Y`` in ``H`` and the block rotations."""
    targets = ["H"] + _block_rotations(model)
    rows = [(f"[{x},{y}]", f"[{x},{y}] = 0") for x in ("K1", "K2", "K3", "r", "R") for y in targets]
    return check_identities("commutant", rows, _named(model, gens), tolerance=tolerance, jobs=jobs)


def closure_assignment(model: SpinorModel, gens: CommutantGenerators) -> dict[str, Operator]:
    named = _named(model, gens)
    return {k: named[k] for k in ("K1", "K2", "K3", "r", "H", "J12", "J34", "R")}


def check_commutant_closure(model: SpinorModel, gens: CommutantGenerators, tolerance: float = 1e-10,
                            include_display: bool = True, jobs: int = 1) -> RelationReport:
    """Closure relations of ``K1, K2, K3, r`` with central ``H, J12, J34, R``.

    Only the ``(2, 2)`` partition has these closure relations; for other
    partitions the report is informational.
    """
    if model.n < 4:
        raise ValueError("closure relations need at least four modes")
    assignment = closure_assignment(model, gens)
    rep = verify(RealizationMap(builtin_presentation("commutant_closure"), assignment), tolerance, jobs=jobs)
    parts = [rep]
    if include_display:
        parts.append(check_display("commutant_closure", assignment, tolerance))
    out = merge_reports("commutant_closure", parts, rep.meta)
    if (model.m, model.mprime) != (2, 2):
        out = mark(out, informational=True)
    return out


# Central elements of the dual -1 Hahn presentation read off from the closure
# relations: with P = r the nu*P term matches -(J12 + J34 R) r, and the
# remaining central term of the quadratic relation gives sigma.
DUAL_HAHN_CENTRALS = {
    "P": "r",
    "nu": "-(J12 + J34*R)",
    "sigma": "2*H*(J12 - J34*R)",
    "rho": "0",
}


def identify_dual_hahn(model: SpinorModel, gens: CommutantGenerators, tolerance: float = 1e-10,
                       jobs: int = 1) -> RelationReport:
    named = _named(model, gens)
    assignment = {"K1": gens.K1, "K2": gens.K2, "K3": gens.K3}
    for sym, text in DUAL_HAHN_CENTRALS.items():
        assignment[sym] = evaluate(text, named) if text != "0" else Operator.zero(model.space, model.backend)
    rep = verify(RealizationMap(builtin_presentation("dual_m1_hahn"), assignment), tolerance, jobs=jobs)
    out = RelationReport("dual_m1_hahn[commutant]", rep.results, dict(rep.meta))
    out.meta["identification"] = dict(DUAL_HAHN_CENTRALS, K1="K1", K2="K2", K3="K3")
    if (model.m, model.mprime) != (2, 2):
        out = mark(out, informational=True)
    return out


def check_generalized(m: int = 2, mprime: int = 4, cutoff: int = 2, jobs: int = 1) -> RelationReport:
    """Commutant property for a larger partition; the rotations used are those inside each block."""
    model = build_spinor_model(m, mprime, cutoff)
    gens = build_commutant(model)
    rep = check_commutant_property(model, gens, jobs=jobs)
    return RelationReport(f"commutant[{m},{mprime}]", rep.results, dict(rep.meta, partition=[m, mprime]))


# -- Clifford normalization audit ---------------------------------------------------

AUDIT_IDENTITIES = [
    ("gamma_square", "g1*g1 = 1"),
    ("Sigma_o_n", "[l1_2,l1_3] = i*l2_3"),
    ("r_square", "r*r = 1"),
    ("R_square", "R*R = 1"),
    ("K1K3", "[K1,K3] = K2 - (J12 + J34*R)*r + 1/2"),
    ("K2r", "{K2,r} = -r + 2*(J12 + J34*R)"),
    ("K3r", "{K3,r} = 0"),
    ("commute_K2_J12", "[K2,J12] = 0"),
]


def clifford_normalization_audit(cutoff: int = 3, tolerance: float = 1e-9) -> RelationReport:
    """Evaluate key identities with ``gamma = b + b^dag`` and with ``gamma / sqrt(2)``.

    Both rows of every identity are informational; the report meta lists the
    normalization each identity needs.
    """
    reports = []
    needs = {}
    for label, scale in (("gamma", 1.0), ("gamma/sqrt2", 1 / math.sqrt(2))):
        model = build_spinor_model(2, 2, cutoff, Backend.FLOAT, Basis.ANALYTIC, gamma_scale=scale)
        gens = build_commutant(model)
        named = _named(model, gens)
        named["g1"] = model.fermions.gamma[0]
        mi = model.scalar(MINUS_I)
        named.update({f"l{u}_{v}": op * mi for (u, v), op in model.Sigma.items()})
        rep = check_identities(label, AUDIT_IDENTITIES, named, tolerance=tolerance, informational=True)
        for res in rep.results:
            if res.status == "PASS":
                needs.setdefault(res.tag, []).append(label)
        reports.append(rep)
    out = merge_reports("clifford_normalization", reports)
    out.meta["passes_with"] = {tag: needs.get(tag, []) for tag, _ in AUDIT_IDENTITIES}
    return out
