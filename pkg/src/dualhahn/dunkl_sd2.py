"""Schwinger-Dunkl algebra sd(2) from two parabose modes.

The two modes act on independent tensor factors, so operators of different
modes commute. With ``H_i = 1/2 {a_i^dag, a_i}``::

    J1 = 1/2 (a1^dag a2 + a1 a2^dag)
    J2 = 1/(2i) (a1^dag a2 - a1 a2^dag)
    J3 = 1/2 (H1 - H2)

and ``H12 = H1 + H2``, ``R12 = R1 R2``.

Setting ``P = R1``, ``nu = mu1 + mu2 R12``, ``rho = 2 H12``,
``sigma = 2 mu1 rho`` and::

    K1 = -(J3 + rho/4),   K2 = -2 J2 - nu P - 1/2,   K3 = [K1, K2]

maps the sd(2) generators onto the centrally extended dual -1 Hahn algebra.
"""

from __future__ import annotations

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
from dualhahn.oscillators import ParaboseSet, build_parabose
from dualhahn.presentations.model import builtin_presentation
from dualhahn.presentations.verify import (
    RealizationMap,
    RelationReport,
    check_display,
    check_identities,
    mark,
    merge_reports,
    verify,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Sd2Realization:
    mu1: Fraction
    mu2: Fraction
    modes: ParaboseSet
    J1: Operator
    J2: Operator
    J3: Operator
    R1: Operator
    R2: Operator
    H12: Operator

    @property
    def R12(self) -> Operator:
        return self.R1 @ self.R2

    @property
    def space(self):
        return self.J1.space

    def assignment(self) -> dict[str, Operator]:
        one = Operator.identity(self.space, self.J1.backend)
        return {
            "J1": self.J1, "J2": self.J2, "J3": self.J3, "R1": self.R1, "R2": self.R2,
            "H12": self.H12, "R12": self.R12, "mu1": one * self.mu1, "mu2": one * self.mu2,
        }


def build_sd2(mu1, mu2, cutoff: int, basis: Basis = Basis.ANALYTIC, backend: Backend | None = None) -> Sd2Realization:
    if cutoff < 3:
        raise ValueError("sd(2) checks need cutoff >= 3")
    space = make_space(2, cutoff)
    modes = build_parabose(space, [mu1, mu2], basis, backend)
    (a1, a2), (ad1, ad2) = modes.a, modes.adag
    be = a1.backend
    half = as_scalar(HALF, be)
    H1 = anticommutator(ad1, a1) * half
    H2 = anticommutator(ad2, a2) * half
    J1 = (ad1 @ a2 + a1 @ ad2) * half
    # 1/(2i) = -i/2
    J2 = (ad1 @ a2 - a1 @ ad2) * as_scalar(GaussianRational(0, -HALF), be)
    J3 = (H1 - H2) * half
    return Sd2Realization(modes.mu[0], modes.mu[1], modes, J1, J2, J3, modes.R[0], modes.R[1], H1 + H2)


def check_sd2(r: Sd2Realization, tolerance: float = 1e-10, jobs: int = 1) -> RelationReport:
    """All sd(2) relations plus centrality of ``H12``, ``R12`` and the reflections squaring to one."""
    rmap = RealizationMap(builtin_presentation("sd2"), r.assignment())
    return verify(rmap, tolerance, jobs=jobs)


def dual_hahn_assignment(r: Sd2Realization, mirrored: bool = False) -> dict[str, Operator]:
    """Operators for ``K1, K2, K3, P, nu, sigma, rho``.

    The mirrored variant swaps the roles of the two modes: ``P = R2``,
    ``nu = mu2 + mu1 R12``, ``sigma = 2 mu2 rho``, with ``J3, J2`` negated.
    """
    be = r.J1.backend
    one = Operator.identity(r.space, be)
    m_first, m_second = (r.mu2, r.mu1) if mirrored else (r.mu1, r.mu2)
    P = r.R2 if mirrored else r.R1
    sign = -1 if mirrored else 1
    nu = one * as_scalar(m_first, be) + r.R12 * as_scalar(m_second, be)
    rho = r.H12 * as_scalar(2, be)
    sigma = rho * as_scalar(2 * m_first, be)
    K1 = -(r.J3 * as_scalar(sign, be) + rho * as_scalar(Fraction(1, 4), be))
    K2 = r.J2 * as_scalar(-2 * sign, be) - nu @ P - one * as_scalar(HALF, be)
    K3 = commutator(K1, K2)
    return {"K1": K1, "K2": K2, "K3": K3, "P": P, "nu": nu, "sigma": sigma, "rho": rho}


def identify_dual_hahn(r: Sd2Realization, mirrored: bool = False, include_display: bool = True,
                       tolerance: float = 1e-10, jobs: int = 1) -> RelationReport:
    """Verify the dual -1 Hahn relations under the identification above.

    With ``include_display`` the literal display forms of the relations are
    checked as well and reported as informational rows. The mirrored
    identification is informational as a whole.
    """
    assignment = dual_hahn_assignment(r, mirrored)
    verified = verify(RealizationMap(builtin_presentation("dual_m1_hahn"), assignment), tolerance, jobs=jobs)
    parts = [verified]
    if include_display:
        parts.append(check_display("dual_m1_hahn", assignment, tolerance))
    name = "dual_m1_hahn_mirrored" if mirrored else "dual_m1_hahn"
    out = merge_reports(name, parts, verified.meta)
    if mirrored:
        out = mark(out, informational=True)
    out.meta["identification"] = _identification_text(mirrored)
    return out


def _identification_text(mirrored: bool) -> dict[str, str]:
    if mirrored:
        return {"P": "R2", "nu": "mu2 + mu1*R12", "rho": "2*H12", "sigma": "2*mu2*rho",
                "K1": "J3 - rho/4", "K2": "2*J2 - nu*P - 1/2", "K3": "[K1,K2]"}
    return {"P": "R1", "nu": "mu1 + mu2*R12", "rho": "2*H12", "sigma": "2*mu1*rho",
            "K1": "-(J3 + rho/4)", "K2": "-2*J2 - nu*P - 1/2", "K3": "[K1,K2]"}


def check_j3_spectrum(r: Sd2Realization, tolerance: float = 1e-10) -> RelationReport:
    """``J3`` equals the diagonal operator of :func:`j3_diagonal` below the top grade."""
    kind = type(r.J3.matrix)
    diag = kind.diagonal([as_scalar(v if r.J3.backend is Backend.EXACT else float(v), r.J3.backend)
                          for v in j3_diagonal(r)])
    d = Operator(r.space, diag)
    return check_identities("j3_spectrum", [("J3_diagonal", "J3 = D")], {"J3": r.J3, "D": d},
                            tolerance=tolerance, budget=1)


def j3_diagonal(r: Sd2Realization) -> list:
    """Expected ``J3`` eigenvalue ``(n1 - n2)/2 + (mu1 - mu2)/2`` for each basis state.

    The truncated matrix matches it below the top grade; at grade ``cutoff``
    the missing raising step changes the diagonal.
    """
    return [Fraction(n1 - n2, 2) + (r.mu1 - r.mu2) / 2 for (n1, n2), _ in r.space.basis()]
