"""Three osp(1|2) copies inside the spinor model and their duality with o(n).

For a set ``S`` of modes::

    A-^S = sum_{u in S} a_u gamma_u,   A+^S = sum_{u in S} a_u^dag gamma_u
    A0^S = 1/2 sum_{u in S} {a_u^dag, a_u},   P^S = clifford_product(S)
    Q^S = (A+^S A-^S - A0^S + 1/2) P^S

The sets are the two blocks and the full index range. For ``(m, m') = (2, 2)``
they are ``{1,2}``, ``{3,4}`` and ``{1,2,3,4}``, and the copies are tied to the
commutant generators by::

    A0^12 + A0^34 = H         A0^12 - A0^34 = 2 K1
    P^12 = r                  P^12 P^34 = R
    Q^12 = J12                Q^34 = J34
    Q^1234 = K2 P^12 P^34

Each copy commutes with the rotations ``J_uv`` for ``u, v`` in its set, and
the o(n) Casimirs ``C^S = sum_{u<v in S} J_uv^2`` satisfy
``C^12 = (Q^12)^2``, ``C^34 = (Q^34)^2`` and ``C^1234 = (Q^1234)^2 - 3/4``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from dualhahn.opalg import Backend, Basis, Operator, RelationVerdict, Verdict, anticommutator, commutator
from dualhahn.oscillators import clifford_product
from dualhahn.presentations.model import builtin_presentation
from dualhahn.presentations.verify import (
    RealizationMap,
    RelationReport,
    RelationResult,
    check_identities,
    mark,
    merge_reports,
    verify,
)
from dualhahn.spinor_commutant import (
    CommutantGenerators,
    SpinorModel,
    build_commutant,
    build_spinor_model,
    check_commutant_closure,
)


@dataclass(frozen=True)
class OspCopy:
    modes: tuple[int, ...]
    Am: Operator
    Ap: Operator
    A0: Operator
    P: Operator
    Q: Operator

    @property
    def label(self) -> str:
        return "".join(str(u) for u in self.modes) if max(self.modes) < 10 else "_".join(map(str, self.modes))

    def assignment(self) -> dict[str, Operator]:
        return {"A0": self.A0, "Ap": self.Ap, "Am": self.Am, "P": self.P}


@dataclass(frozen=True)
class HoweRealization:
    model: SpinorModel
    gens: CommutantGenerators
    copies: tuple[OspCopy, OspCopy, OspCopy]

    @property
    def first(self) -> OspCopy:
        return self.copies[0]

    @property
    def second(self) -> OspCopy:
        return self.copies[1]

    @property
    def full(self) -> OspCopy:
        return self.copies[2]

    def named(self) -> dict[str, Operator]:
        """Operators under the names used in the identity texts of this module."""
        out = {"H": self.model.H, "K1": self.gens.K1, "K2": self.gens.K2, "K3": self.gens.K3,
               "r": self.gens.r, "R": self.gens.R}
        for (u, v), op in self.model.J.items():
            out[_jname(self.model, u, v)] = op
        for c in self.copies:
            for field_ in ("Am", "Ap", "A0", "P", "Q"):
                out[f"{field_}_{c.label}"] = getattr(c, field_)
        return out


def _jname(model: SpinorModel, u: int, v: int) -> str:
    return f"J{u}{v}" if model.n < 10 else f"J{u}_{v}"


def build_copy(model: SpinorModel, modes) -> OspCopy:
    modes = tuple(modes)
    bos, fer = model.bosons, model.fermions
    half = model.scalar(Fraction(1, 2))
    Am = Ap = A0 = None
    for u in modes:
        am = bos.a[u - 1] @ fer.gamma[u - 1]
        ap = bos.adag[u - 1] @ fer.gamma[u - 1]
        a0 = anticommutator(bos.adag[u - 1], bos.a[u - 1]) * half
        Am = am if Am is None else Am + am
        Ap = ap if Ap is None else Ap + ap
        A0 = a0 if A0 is None else A0 + a0
    P = clifford_product(fer, [u - 1 for u in modes])
    Q = (Ap @ Am - A0 + half) @ P
    return OspCopy(modes, Am, Ap, A0, P, Q)


def build_howe(model: SpinorModel, gens: CommutantGenerators | None = None) -> HoweRealization:
    if gens is None:
        gens = build_commutant(model)
    block1, block2 = model.blocks
    copies = (build_copy(model, block1), build_copy(model, block2), build_copy(model, block1 + block2))
    return HoweRealization(model, gens, copies)


def check_osp_copies(h: HoweRealization, tolerance: float = 1e-10, jobs: int = 1) -> RelationReport:
    reports = []
    for c in h.copies:
        rep = verify(RealizationMap(builtin_presentation("osp12"), c.assignment()), tolerance, jobs=jobs)
        reports.append(RelationReport(f"osp12[{c.label}]", rep.results, rep.meta))
    return merge_reports("osp_copies", reports)


def dictionary_identities(h: HoweRealization) -> list[tuple[str, str]]:
    a, b, f = (c.label for c in h.copies)
    rows = [
        ("A0_sum", f"A0_{a} + A0_{b} = H"),
        ("A0_diff", f"A0_{a} - A0_{b} = 2*K1"),
        ("P_first", f"P_{a} = r"),
        ("P_product", f"P_{a}*P_{b} = R"),
    ]
    for c in h.copies[:2]:
        if len(c.modes) == 2:
            rows.append((f"Q_{c.label}", f"Q_{c.label} = {_jname(h.model, *c.modes)}"))
    rows.append((f"Q_{f}", f"Q_{f} = K2*P_{a}*P_{b}"))
    return rows


def check_dictionary(h: HoweRealization, tolerance: float = 1e-10, jobs: int = 1) -> RelationReport:
    rep = check_identities("dictionary", dictionary_identities(h), h.named(), tolerance=tolerance, jobs=jobs)
    if (h.model.m, h.model.mprime) != (2, 2):
        rep = mark(rep, informational=True)
    return rep


def commuting_identities(h: HoweRealization) -> list[tuple[str, str]]:
    rows = []
    for c in h.copies:
        for u, v in itertools.combinations(c.modes, 2):
            j = _jname(h.model, u, v)
            for gen in ("Ap", "Am", "A0"):
                rows.append((f"[{j},{gen}_{c.label}]", f"[{j},{gen}_{c.label}] = 0"))
    return rows


def check_commuting_actions(h: HoweRealization, tolerance: float = 1e-10, jobs: int = 1) -> RelationReport:
    """Each copy commutes with the rotations inside its mode set, plus two controls.

    The controls: ``[J12, A+^34] = 0`` holds since the modes are disjoint,
    and ``[J13, A+^12]`` must be nonzero since ``J13`` mixes mode 3 into the
    first copy.
    """
    named = h.named()
    main = check_identities("commuting", commuting_identities(h), named, tolerance=tolerance, jobs=jobs)
    a, b = h.first.label, h.second.label
    u, v = h.first.modes[0], h.second.modes[0]
    mixer = _jname(h.model, u, v)
    inner = _jname(h.model, *h.first.modes[:2])
    disjoint = check_identities("controls", [(f"[{inner},Ap_{b}]", f"[{inner},Ap_{b}] = 0")], named,
                                tolerance=tolerance)
    negative = check_identities("controls", [(f"[{mixer},Ap_{a}]", f"[{mixer},Ap_{a}] = 0")], named,
                                tolerance=tolerance, expect_zero=False)
    controls = RelationReport("controls", disjoint.results + negative.results)
    return merge_reports("commuting_actions", [main, controls])


def _casimir_text(h: HoweRealization, modes) -> str:
    return " + ".join(f"{_jname(h.model, u, v)}*{_jname(h.model, u, v)}" for u, v in itertools.combinations(modes, 2))


def casimir_shift(n: int) -> Fraction:
    """Constant in ``C^S = (Q^S)^2 - shift`` for ``|S| = n``.

    ``(n - 1)(n - 2)/8``: 0 for a pair, 3/4 for four modes. The six-mode value
    5/2 was confirmed on the ``(2, 4)`` model.
    """
    return Fraction((n - 1) * (n - 2), 8)


def casimir_identities(h: HoweRealization, drop_shift: bool = False) -> list[tuple[str, str]]:
    rows = []
    for k, c in enumerate(h.copies):
        shift = casimir_shift(len(c.modes))
        tail = "" if shift == 0 or (drop_shift and k == 2) else f" - {shift}"
        rows.append((f"C_{c.label}", f"{_casimir_text(h, c.modes)} = Q_{c.label}*Q_{c.label}{tail}"))
    return rows


def check_casimir_correspondence(h: HoweRealization, tolerance: float = 1e-10, jobs: int = 1) -> RelationReport:
    """The three Casimir identities, plus the full one without its shift as a negative control."""
    named = h.named()
    main = check_identities("casimir", casimir_identities(h), named, tolerance=tolerance, jobs=jobs)
    dropped = casimir_identities(h, drop_shift=True)[-1]
    control = check_identities("controls", [(dropped[0] + "_unshifted", dropped[1])], named,
                               tolerance=tolerance, expect_zero=False)
    out = merge_reports("casimir_correspondence", [main, control])
    if (h.model.m, h.model.mprime) != (2, 2):
        out = mark(out, informational=True)
    return out


def check_squared_casimir(h: HoweRealization, tolerance: float = 1e-10, jobs: int = 1) -> RelationReport:
    """``(Q^S)^2`` commutes with every rotation inside ``S``."""
    rows = []
    for c in h.copies:
        for u, v in itertools.combinations(c.modes, 2):
            j = _jname(h.model, u, v)
            rows.append((f"[Q_{c.label}^2,{j}]", f"[Q_{c.label}*Q_{c.label},{j}] = 0"))
    return check_identities("squared_casimir", rows, h.named(), tolerance=tolerance, jobs=jobs)


def kappa_bridge(h: HoweRealization, tolerance: float = 1e-10, jobs: int = 1) -> RelationReport:
    """Clebsch-Gordan algebra on the spinor space, next to the commutant closure.

    ``k1 = (A0^12 - A0^34)/2``, ``k2 = Q^1234 P^12 P^34``, ``p = P^12`` with
    ``Q1 = Q^12``, ``Q2 = Q^34``, ``P12 = P^12 P^34``, ``A0 = A0^1234``. The
    report holds the kappa relations, the generator matches ``k1 = K1``,
    ``k2 = K2``, ``p = r``, and a row per closure relation comparing its
    status with the corresponding kappa relation.
    """
    a, b, f = h.first, h.second, h.full
    half = h.model.scalar(Fraction(1, 2))
    k1 = (a.A0 - b.A0) * half
    R = a.P @ b.P
    k2 = f.Q @ R
    assignment = {"k1": k1, "k2": k2, "k3": commutator(k1, k2), "p": a.P,
                  "Q1": a.Q, "Q2": b.Q, "P12": R, "A0": f.A0}
    kappa = verify(RealizationMap(builtin_presentation("cg_kappa"), assignment), tolerance, jobs=jobs)
    kappa = RelationReport("cg_kappa[spinor]", kappa.results, kappa.meta)
    named = dict(h.named(), k1=k1, k2=k2, p=a.P)
    gens = check_identities("generators", [("k1", "k1 = K1"), ("k2", "k2 = K2"), ("p", "p = r")], named,
                            tolerance=tolerance)
    closure = check_commutant_closure(h.model, h.gens, tolerance, include_display=False, jobs=jobs)
    pairs = [("K1K2", "k1k2"), ("K1K3", "k1k3"), ("K2K3", "k3k2"), ("K1r", "k1p"), ("K2r", "k2p"), ("K3r", "k3p")]
    rows = []
    for ctag, ktag in pairs:
        same = closure.result(ctag).status == kappa.result(ktag).status
        verdict = RelationVerdict(Verdict.EXACT_ZERO if same else Verdict.RESIDUAL, 0.0 if same else 1.0, 0, 1, 0)
        rows.append(RelationResult(f"{ctag}~{ktag}", "comparison",
                                   f"status({ctag}) = status({ktag})", verdict))
    comparison = RelationReport("same_verdicts", tuple(rows))
    out = merge_reports("kappa_bridge", [kappa, gens, comparison])
    if (h.model.m, h.model.mprime) != (2, 2):
        out = mark(out, informational=True)
    return out


def casimir_spectral_scan(cutoff: int = 3, tolerance: float = 1e-10) -> RelationReport:
    """Smallest eigenvalue of ``J12^2`` and ``J34^2`` below the top grade (FLOAT, orthonormal basis).

    The rotations are Hermitian in the orthonormal basis, so their squares
    have nonnegative spectrum; the rows are informational.
    """
    model = build_spinor_model(2, 2, cutoff, Backend.FLOAT, Basis.ORTHONORMAL)
    cols = model.space.window(1)
    rows = []
    for (u, v) in ((1, 2), (3, 4)):
        J = model.J[u, v]
        block = J.matrix.columns(cols).to_dense()[cols, :]
        values = np.linalg.eigvalsh(block @ block)
        worst = max(0.0, -float(values.min()))
        verdict = RelationVerdict(Verdict.RESIDUAL, worst, 1, cols.size, cutoff - 1, tolerance)
        rows.append(RelationResult(f"C_{u}{v}>=0", "spectral", f"min spec J{u}{v}^2 >= 0", verdict,
                                   informational=True))
    return RelationReport("spectral_scan", tuple(rows), {"cutoff": cutoff})
