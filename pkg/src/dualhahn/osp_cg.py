"""osp(1|2) discrete-series irreps, their tensor product, and Clebsch-Gordan coefficients.

An irrep with parameters ``mu >= 0`` and ``eps = +-1`` acts on ``|n>``::

    A0 |n> = (n + mu + 1/2) |n>
    A+ |n> = |n+1>,   A- |n> = [n]_mu |n-1>           (analytic basis)
    A+ |n> = sqrt([n+1]_mu) |n+1>, ...                  (orthonormal basis)
    P |n> = eps (-1)^n |n>

with sCasimir ``S = A+ A- - A0 + 1/2`` and Casimir ``Q = S P = -eps mu``.

The coproduct is ``A0 -> A0(1) + A0(2)``, ``A+- -> A+-(1) P(2) + A+-(2)``,
``P -> P(1) P(2)``. On the tensor product

    k1 = 1/2 (A0(1) - A0(2)),   k2 = Q(12) P(12),   k3 = [k1, k2],   p = P(1)

generate the Clebsch-Gordan algebra. Superscripts ``(1)``, ``(2)``, ``(12)``
are spelled ``1``, ``2``, ``12`` in operator names (``Ap1``, ``Q12``...).

The tensor product decomposes into irreps labelled by ``j = 0, 1, ...`` with
``mu12 = mu1 + mu2 + j + 1/2`` and ``eps12 = (-1)^j eps1 eps2``. The solver
builds each lowest coupled vector as the kernel of ``A-(12)`` on the grade-``j``
subspace and climbs with ``A+(12)``.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from dualhahn.opalg import (
    Backend,
    Basis,
    Operator,
    as_scalar,
    commutator,
    kron_embed,
    make_space,
)
from dualhahn.opalg.sparse import ExactMatrix, FloatMatrix
from dualhahn.oscillators import build_parabose
from dualhahn.presentations.model import builtin_presentation
from dualhahn.presentations.verify import (
    RealizationMap,
    RelationReport,
    check_display,
    check_identities,
    merge_reports,
    verify,
)

KERNEL_TOL = 1e-10
VALIDATE_TOL = 1e-8


class CGError(RuntimeError):
    pass


@dataclass(frozen=True)
class Irrep:
    mu: object
    eps: int
    cutoff: int
    basis: Basis
    A0: Operator
    Ap: Operator
    Am: Operator
    P: Operator

    @property
    def backend(self) -> Backend:
        return self.A0.backend

    @property
    def space(self):
        return self.A0.space

    def scalar(self, value):
        return as_scalar(value, self.backend)

    @property
    def S(self) -> Operator:
        return self.Ap @ self.Am - self.A0 + self.scalar(Fraction(1, 2))

    @property
    def Q(self) -> Operator:
        return self.S @ self.P

    def assignment(self) -> dict[str, Operator]:
        return {"A0": self.A0, "Ap": self.Ap, "Am": self.Am, "P": self.P}


def build_irrep(mu, eps: int, cutoff: int, basis: Basis = Basis.ANALYTIC, backend: Backend | None = None) -> Irrep:
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if backend is Backend.FLOAT or (backend is None and basis is Basis.ORTHONORMAL):
        mu = float(mu) if not isinstance(mu, Fraction) else mu
    else:
        mu = Fraction(mu)
    if mu < 0:
        warnings.warn(f"mu={mu} < 0 lies outside the unitary discrete series", stacklevel=2)
    space = make_space(1, cutoff)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        modes = build_parabose(space, [mu], basis, backend)
    be = modes.a[0].backend
    kind = ExactMatrix if be is Backend.EXACT else FloatMatrix
    diag = [as_scalar(n + mu + Fraction(1, 2) if be is Backend.EXACT else n + float(mu) + 0.5, be)
            for n in range(cutoff + 1)]
    A0 = Operator(space, kind.diagonal(diag))
    P = modes.R[0] * as_scalar(eps, be)
    return Irrep(mu, eps, cutoff, basis, A0, modes.adag[0], modes.a[0], P)


def check_irrep(ir: Irrep, tolerance: float = 1e-10) -> RelationReport:
    """osp(1|2) relations, sCasimir properties, ``P*P = 1`` and ``Q = -eps mu``."""
    rel = verify(RealizationMap(builtin_presentation("osp12"), ir.assignment()), tolerance)
    target = Operator.identity(ir.space, ir.backend) * ir.scalar(-ir.eps * ir.mu)
    cas = check_identities("casimir", [("Q", "Q = q")], {"Q": ir.Q, "q": target}, tolerance=tolerance)
    return merge_reports(f"irrep[mu={ir.mu},eps={ir.eps}]", [rel, cas])


@dataclass(frozen=True)
class TensorRep:
    ir1: Irrep
    ir2: Irrep
    ops: dict = field(repr=False)

    def __getattr__(self, name):
        ops = self.__dict__.get("ops", {})
        if name in ops:
            return ops[name]
        raise AttributeError(name)

    @property
    def space(self):
        return self.ops["A0"].space

    @property
    def backend(self) -> Backend:
        return self.ops["A0"].backend

    def scalar(self, value):
        return as_scalar(value, self.backend)


def _embed(space, op: Operator, slot: int) -> Operator:
    kind = type(op.matrix)
    eye = kind.identity(op.space.dimension)
    factors = [op.matrix, eye] if slot == 0 else [eye, op.matrix]
    return kron_embed(space, factors, [kind.identity(1)], op.grade_raise, op.grade_lower, op.climb)


def build_tensor(ir1: Irrep, ir2: Irrep) -> TensorRep:
    if ir1.cutoff != ir2.cutoff or ir1.basis is not ir2.basis or ir1.backend is not ir2.backend:
        raise ValueError("irreps must share cutoff, basis and backend")
    space = make_space(2, ir1.cutoff)
    ops: dict[str, Operator] = {}
    for slot, ir in ((0, ir1), (1, ir2)):
        tag = str(slot + 1)
        for name in ("A0", "Ap", "Am", "P"):
            ops[name + tag] = _embed(space, getattr(ir, name), slot)
        ops["Q" + tag] = _embed(space, ir.Q, slot)
    half = as_scalar(Fraction(1, 2), ir1.backend)
    ops["A0"] = ops["A01"] + ops["A02"]
    ops["Ap"] = ops["Ap1"] @ ops["P2"] + ops["Ap2"]
    ops["Am"] = ops["Am1"] @ ops["P2"] + ops["Am2"]
    ops["P"] = ops["P1"] @ ops["P2"]
    ops["S"] = ops["Ap"] @ ops["Am"] - ops["A0"] + half
    ops["Q"] = ops["S"] @ ops["P"]
    ops["k1"] = (ops["A01"] - ops["A02"]) * half
    ops["k2"] = ops["Q"] @ ops["P"]
    ops["k3"] = commutator(ops["k1"], ops["k2"])
    ops["p"] = ops["P1"]
    return TensorRep(ir1, ir2, ops)


def check_tensor(t: TensorRep, tolerance: float = 1e-10) -> RelationReport:
    """Coproduct images satisfy osp(1|2) and ``Q(12)`` commutes with them."""
    o = t.ops
    rel = verify(RealizationMap(builtin_presentation("osp12"),
                                {"A0": o["A0"], "Ap": o["Ap"], "Am": o["Am"], "P": o["P"]}), tolerance)
    rows = [("[Q,A0]", "[Q,A0] = 0"), ("[Q,Ap]", "[Q,Ap] = 0"), ("[Q,Am]", "[Q,Am] = 0"),
            ("[Q,P]", "[Q,P] = 0"), ("[k1,p]", "[k1,p] = 0")]
    com = check_identities("casimir", rows, o, tolerance=tolerance)
    return merge_reports("coproduct", [rel, com])


COPRODUCT_CASIMIR = "Q = (Am1*Ap2 - Ap1*Am2)*P1 + Q1*P2 + Q2*P1 - 1/2*P1*P2"
COPRODUCT_CASIMIR_PERTURBED = "Q = (Am1*Ap2 - Ap1*Am2)*P2 + Q1*P2 + Q2*P1 - 1/2*P1*P2"


def check_coproduct_casimir(t: TensorRep, perturbed: bool = False, tolerance: float = 1e-10) -> RelationReport:
    """Closed form of ``Q(12)`` against its definition.

    ``perturbed`` swaps ``P1`` for ``P2`` in the first term; that row is a
    negative control and passes only when the residual is nonzero.
    """
    if perturbed:
        return check_identities("coproduct_casimir_perturbed", [("Q12", COPRODUCT_CASIMIR_PERTURBED)], t.ops,
                                tolerance=tolerance, expect_zero=False)
    return check_identities("coproduct_casimir", [("Q12", COPRODUCT_CASIMIR)], t.ops, tolerance=tolerance)


def kappa_assignment(t: TensorRep) -> dict[str, Operator]:
    o = t.ops
    return {"k1": o["k1"], "k2": o["k2"], "k3": o["k3"], "p": o["p"],
            "Q1": o["Q1"], "Q2": o["Q2"], "P12": o["P"], "A0": o["A0"]}


def check_kappa_algebra(t: TensorRep, tolerance: float = 1e-10, include_display: bool = True,
                        jobs: int = 1) -> RelationReport:
    assignment = kappa_assignment(t)
    rep = verify(RealizationMap(builtin_presentation("cg_kappa"), assignment), tolerance, jobs=jobs)
    parts = [rep]
    if include_display:
        parts.append(check_display("cg_kappa", assignment, tolerance))
    return merge_reports("cg_kappa", parts, rep.meta)


# -- Clebsch-Gordan solver -------------------------------------------------------

def mu12(mu1, mu2, j: int):
    return mu1 + mu2 + j + Fraction(1, 2) if isinstance(mu1 + mu2, Fraction) else mu1 + mu2 + j + 0.5


def eps12(eps1: int, eps2: int, j: int) -> int:
    return (-1) ** j * eps1 * eps2


def _grade_indices(space, g: int) -> np.ndarray:
    """Basis indices of ``|n1, g - n1>`` ordered by increasing ``n1``."""
    return np.array([space.index((n1, g - n1)) for n1 in range(g + 1)])


def fix_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Scale ``v`` so its first entry above ``tol`` in modulus is real positive."""
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size == 0:
        return v
    first = v[idx[0]]
    return v * (abs(first) / first)


@dataclass
class CGFamily:
    j: int
    mu12: float
    eps12: int
    vectors: dict  # n12 -> complex vector over |n1, j + n12 - n1>, n1 = 0..j+n12
    residuals: dict = field(default_factory=dict)


@dataclass
class CGResult:
    mu1: float
    mu2: float
    eps1: int
    eps2: int
    cutoff: int
    j_max: int
    families: list

    @property
    def max_grade(self) -> int:
        return self.cutoff - 1

    def family(self, j: int) -> CGFamily:
        return self.families[j]

    def coefficient(self, j: int, n12: int, n1: int, n2: int) -> complex:
        if n1 + n2 != j + n12:
            return 0j
        vec = self.families[j].vectors.get(n12)
        if vec is None:
            raise KeyError(f"(j={j}, n12={n12}) lies outside the reliable window")
        return complex(vec[n1])

    def grade_matrix(self, g: int) -> np.ndarray:
        """Columns are the coupled vectors of total grade ``g`` (``j`` ascending), rows ``n1 = 0..g``."""
        cols = [f.vectors[g - f.j] for f in self.families if f.j <= g and (g - f.j) in f.vectors]
        return np.column_stack(cols) if cols else np.zeros((g + 1, 0))

    def orthonormality_residual(self) -> float:
        worst = 0.0
        for g in range(self.max_grade + 1):
            C = self.grade_matrix(g)
            if C.shape[1]:
                worst = max(worst, float(np.abs(C.conj().T @ C - np.eye(C.shape[1])).max()))
        return worst

    def eigen_residual(self) -> float:
        return max((max(f.residuals.values(), default=0.0) for f in self.families), default=0.0)

    def rows(self):
        for f in self.families:
            for n12 in sorted(f.vectors):
                g = f.j + n12
                for n1 in range(g + 1):
                    yield f.j, n12, n1, g - n1, complex(f.vectors[n12][n1])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["j", "n12", "n1", "n2", "coefficient"])
        for j, n12, n1, n2, c in self.rows():
            writer.writerow([j, n12, n1, n2, _fmt_coeff(c)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "mu1": float(self.mu1), "mu2": float(self.mu2), "eps1": self.eps1, "eps2": self.eps2,
            "cutoff": self.cutoff, "j_max": self.j_max,
            "orthonormality_residual": self.orthonormality_residual(),
            "families": [
                {
                    "j": f.j, "mu12": float(f.mu12), "eps12": f.eps12,
                    "vectors": [
                        {"n12": n12, "coefficients": [[n1, f.j + n12 - n1, _fmt_coeff(complex(c))]
                                                      for n1, c in enumerate(f.vectors[n12])]}
                        for n12 in sorted(f.vectors)
                    ],
                }
                for f in self.families
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _fmt_coeff(c: complex) -> str:
    """Real coefficients print as one number, complex ones as ``re+imj``; ``-0`` prints as ``0``."""
    re = 0.0 if abs(c.real) < 5e-17 else c.real
    im = 0.0 if abs(c.imag) < 5e-17 else c.imag
    if im == 0.0:
        return format(re, ".17g")
    return f"{format(re, '.17g')}{'+' if im >= 0 else '-'}{format(abs(im), '.17g')}j"


def _dense_block(op: Operator, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    return op.matrix.columns(cols).to_dense()[rows, :]


def solve_cg(t: TensorRep, j_max: int, kernel_tol: float = KERNEL_TOL, validate_tol: float = VALIDATE_TOL) -> CGResult:
    """Coupled vectors ``|n12, j>`` for ``j <= j_max`` on grades ``<= cutoff - 1``."""
    if t.backend is not Backend.FLOAT or t.ir1.basis is not Basis.ORTHONORMAL:
        raise ValueError("the CG solver needs the orthonormal basis on the FLOAT backend")
    cutoff = t.ir1.cutoff
    top = cutoff - 1
    if j_max < 0 or j_max > top:
        raise ValueError(f"j_max must lie in [0, {top}] at cutoff {cutoff}")
    mu1, mu2, e1, e2 = float(t.ir1.mu), float(t.ir2.mu), t.ir1.eps, t.ir2.eps
    space = t.space
    o = t.ops
    families = []
    for j in range(j_max + 1):
        cols = _grade_indices(space, j)
        if j == 0:
            lowest = np.ones(1, dtype=complex)
        else:
            block = _dense_block(o["Am"], _grade_indices(space, j - 1), cols)
            _, s, vh = scipy.linalg.svd(block)
            rank = int(np.sum(s > kernel_tol))
            nullity = block.shape[1] - rank
            if nullity != 1:
                raise CGError(f"kernel of A-(12) on grade {j} has dimension {nullity}; lower j_max")
            lowest = vh[-1].conj()
        lowest = fix_phase(lowest / np.linalg.norm(lowest))
        fam = CGFamily(j, mu12(mu1, mu2, j), eps12(e1, e2, j), {0: lowest})
        vec = lowest
        for n12 in range(1, top - j + 1):
            g = j + n12
            up = _dense_block(o["Ap"], _grade_indices(space, g), _grade_indices(space, g - 1))
            vec = up @ vec
            norm = np.linalg.norm(vec)
            if norm < kernel_tol:
                raise CGError(f"A+(12) annihilated the coupled vector (j={j}, n12={n12})")
            vec = fix_phase(vec / norm)
            fam.vectors[n12] = vec
        _validate(t, fam, validate_tol)
        families.append(fam)
    return CGResult(mu1, mu2, e1, e2, cutoff, j_max, families)


def _validate(t: TensorRep, fam: CGFamily, tol: float) -> None:
    o = t.ops
    space = t.space
    for n12, vec in fam.vectors.items():
        g = fam.j + n12
        idx = _grade_indices(space, g)
        checks = (
            (o["Q"], -fam.eps12 * fam.mu12),
            (o["A0"], n12 + fam.mu12 + 0.5),
            (o["P"], fam.eps12 * (-1) ** n12),
        )
        worst = 0.0
        for op, value in checks:
            block = _dense_block(op, idx, idx)
            worst = max(worst, float(np.abs(block @ vec - value * vec).max()))
        fam.residuals[n12] = worst
        if worst > tol:
            raise CGError(f"coupled vector (j={fam.j}, n12={n12}) misses its eigenvalues by {worst:.3g}")


def grade_casimir_spectrum(t: TensorRep, g: int) -> np.ndarray:
    """Sorted eigenvalues of ``Q(12)`` on the grade-``g`` subspace (FLOAT, ``g <= cutoff - 1``)."""
    if g > t.ir1.cutoff - 1:
        raise ValueError("grade lies outside the reliable window")
    idx = _grade_indices(t.space, g)
    block = _dense_block(t.ops["Q"], idx, idx)
    if t.backend is Backend.EXACT:
        block = block.astype(complex)
    return np.sort(np.linalg.eigvals(block).real)


def expected_casimir_spectrum(mu1, mu2, eps1: int, eps2: int, g: int) -> np.ndarray:
    return np.sort([-eps12(eps1, eps2, j) * float(mu12(mu1, mu2, j)) for j in range(g + 1)])


def build_cg_tensor(mu1, mu2, eps1: int = 1, eps2: int = 1, cutoff: int = 10) -> TensorRep:
    ir1 = build_irrep(mu1, eps1, cutoff, Basis.ORTHONORMAL)
    ir2 = build_irrep(mu2, eps2, cutoff, Basis.ORTHONORMAL)
    return build_tensor(ir1, ir2)


def cg_report(result: CGResult, oracle=None, tolerance: float = 1e-10, oracle_tolerance: float = 1e-8) -> dict:
    """Summary numbers for a CG run; ``oracle`` is a callable returning the brute-force vectors."""
    out = {
        "orthonormality_residual": result.orthonormality_residual(),
        "eigen_residual": result.eigen_residual(),
        "tolerance": tolerance,
    }
    if oracle is not None:
        ref = oracle(result.mu1, result.mu2, result.eps1, result.eps2, result.max_grade, result.j_max)
        worst = 0.0
        for (j, n12), vec in ref.items():
            mine = result.families[j].vectors[n12]
            worst = max(worst, float(np.abs(mine - vec).max()))
        out["oracle_max_deviation"] = worst
        out["oracle_tolerance"] = oracle_tolerance
    out["passed"] = (out["orthonormality_residual"] <= tolerance and out["eigen_residual"] <= tolerance
                     and out.get("oracle_max_deviation", 0.0) <= oracle_tolerance)
    return out


__all__ = [
    "CGError", "CGFamily", "CGResult", "Irrep", "TensorRep", "build_cg_tensor", "build_irrep", "build_tensor",
    "cg_report", "check_coproduct_casimir", "check_irrep", "check_kappa_algebra", "check_tensor",
    "eps12", "expected_casimir_spectrum", "fix_phase", "grade_casimir_spectrum", "kappa_assignment", "mu12",
    "solve_cg",
]
