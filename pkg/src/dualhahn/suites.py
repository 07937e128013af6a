"""Verification suites behind the command line, one per module.

Each suite returns a :class:`SuiteResult` holding its relation reports and
any extra numbers (CG residuals, tables). ``run_suites`` runs several and
assembles a deterministic JSON-ready dictionary.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from dualhahn import __version__
from dualhahn.opalg import Backend, Basis
from dualhahn.presentations.verify import RelationReport, budget_override, numeric_result

SUITES = ("sd2", "commutant", "osp", "cg", "howe")
DEFAULT_CUTOFF = {"sd2": 6, "commutant": 4, "osp": 8, "cg": 10, "howe": 4}
KAPPA_CUTOFF = 6
CG_J_MAX = 4


@dataclass(frozen=True)
class RunConfig:
    suite: str = "all"
    cutoff: int | None = None
    mu1: Fraction = Fraction(1, 3)
    mu2: Fraction = Fraction(1, 5)
    eps1: int = 1
    eps2: int = 1
    partition: tuple[int, int] = (2, 2)
    backend: str | None = None  # exact, float or None for the suite default
    budget: int | None = None
    seed: int = 0
    jobs: int = 1
    j_max: int | None = None
    tolerance: float = 1e-10
    csv: str | None = None

    def suites(self) -> tuple[str, ...]:
        return SUITES if self.suite == "all" else (self.suite,)

    def cutoff_for(self, suite: str) -> int:
        return self.cutoff if self.cutoff is not None else DEFAULT_CUTOFF[suite]

    def as_dict(self) -> dict:
        return {
            "suite": self.suite, "cutoff": self.cutoff, "mu1": str(self.mu1), "mu2": str(self.mu2),
            "eps1": self.eps1, "eps2": self.eps2, "partition": list(self.partition), "backend": self.backend,
            "budget": self.budget, "seed": self.seed, "j_max": self.j_max, "tolerance": self.tolerance,
        }


@dataclass
class SuiteResult:
    suite: str
    reports: list
    extra: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "reports": [_report_dict(self.suite, r, timing) for r in self.reports],
            "extra": self.extra,
        }
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


def _report_dict(suite: str, report: RelationReport, timing: bool) -> dict:
    return {
        "name": report.name,
        "passed": report.passed,
        "meta": report.meta,
        "results": [r.to_dict(f"{suite}:{report.name}:", timing) for r in report.results],
    }


def _algebra_backend(cfg: RunConfig) -> tuple[Basis, Backend]:
    if cfg.backend == "float":
        return Basis.ORTHONORMAL, Backend.FLOAT
    return Basis.ANALYTIC, Backend.EXACT


# -- suites --------------------------------------------------------------------

def run_sd2(cfg: RunConfig) -> SuiteResult:
    from dualhahn import dunkl_sd2 as m

    basis, backend = _algebra_backend(cfg)
    r = m.build_sd2(cfg.mu1, cfg.mu2, cfg.cutoff_for("sd2"), basis, backend)
    reports = [
        m.check_sd2(r, cfg.tolerance, cfg.jobs),
        m.check_j3_spectrum(r, cfg.tolerance),
        m.identify_dual_hahn(r, tolerance=cfg.tolerance, jobs=cfg.jobs),
        m.identify_dual_hahn(r, mirrored=True, include_display=False, tolerance=cfg.tolerance, jobs=cfg.jobs),
    ]
    return SuiteResult("sd2", reports, {"dimension": r.space.dimension, "flags": list(r.modes.flags)})


def run_commutant(cfg: RunConfig) -> SuiteResult:
    from dualhahn import spinor_commutant as m

    basis, backend = _algebra_backend(cfg)
    model = m.build_spinor_model(*cfg.partition, cfg.cutoff_for("commutant"), backend, basis)
    gens = m.build_commutant(model)
    reports = [m.check_o_n(model, w, cfg.tolerance, cfg.jobs) for w in ("L", "Sigma", "J")]
    reports.append(m.check_commutant_property(model, gens, cfg.tolerance, cfg.jobs))
    if cfg.partition == (2, 2):
        reports.append(m.check_commutant_closure(model, gens, cfg.tolerance, jobs=cfg.jobs))
        reports.append(m.identify_dual_hahn(model, gens, cfg.tolerance, cfg.jobs))
    reports.append(m.clifford_normalization_audit())
    extra = {"dimension": model.space.dimension, "partition": list(cfg.partition), "k2_shift": str(gens.shift)}
    return SuiteResult("commutant", reports, extra)


def _random_mu(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(0, 12), rng.randint(1, 9))


def run_osp(cfg: RunConfig) -> SuiteResult:
    from dualhahn import osp_cg as m

    basis, backend = _algebra_backend(cfg)
    cutoff = cfg.cutoff_for("osp")
    kappa_cutoff = cfg.cutoff if cfg.cutoff is not None else KAPPA_CUTOFF
    rng = random.Random(cfg.seed)
    irreps = [(cfg.mu1, cfg.eps1), (cfg.mu2, cfg.eps2)] + [(_random_mu(rng), rng.choice((1, -1))) for _ in range(2)]
    reports = [m.check_irrep(m.build_irrep(mu, eps, cutoff, basis, backend), cfg.tolerance) for mu, eps in irreps]
    t = m.build_tensor(m.build_irrep(cfg.mu1, cfg.eps1, cutoff, basis, backend),
                       m.build_irrep(cfg.mu2, cfg.eps2, cutoff, basis, backend))
    reports += [m.check_tensor(t, cfg.tolerance), m.check_coproduct_casimir(t, tolerance=cfg.tolerance),
                m.check_coproduct_casimir(t, perturbed=True, tolerance=cfg.tolerance)]
    tk = t if kappa_cutoff == cutoff else m.build_tensor(
        m.build_irrep(cfg.mu1, cfg.eps1, kappa_cutoff, basis, backend),
        m.build_irrep(cfg.mu2, cfg.eps2, kappa_cutoff, basis, backend))
    reports.append(m.check_kappa_algebra(tk, cfg.tolerance, jobs=cfg.jobs))
    extra = {"cutoff": cutoff, "kappa_cutoff": kappa_cutoff, "random_irreps": [[str(mu), eps] for mu, eps in irreps[2:]]}
    return SuiteResult("osp", reports, extra)


def run_cg(cfg: RunConfig) -> SuiteResult:
    from dualhahn import osp_cg as m
    from dualhahn.cg_oracle import grade_spectrum, oracle_vectors

    if cfg.backend == "exact" and cfg.suite == "cg":
        raise ValueError("the CG solver runs on the float backend")
    cutoff = cfg.cutoff_for("cg")
    if cutoff < 2:
        raise ValueError("the CG suite needs cutoff >= 2")
    j_max = cfg.j_max if cfg.j_max is not None else min(CG_J_MAX, cutoff - 2)
    t = m.build_cg_tensor(cfg.mu1, cfg.mu2, cfg.eps1, cfg.eps2, cutoff)
    result = m.solve_cg(t, j_max)
    summary = m.cg_report(result, oracle_vectors, cfg.tolerance)
    tol = cfg.tolerance
    rows = [
        numeric_result("orthonormality", "max |C^dag C - 1| over grades", summary["orthonormality_residual"], tol),
        numeric_result("eigenvalues", "Q, A0, P eigenvalue residual of coupled vectors", summary["eigen_residual"], tol),
        numeric_result("oracle", "max deviation from dense diagonalization", summary["oracle_max_deviation"], 1e-8),
    ]
    worst = 0.0
    for g in range(result.max_grade + 1):
        expected = m.expected_casimir_spectrum(float(cfg.mu1), float(cfg.mu2), cfg.eps1, cfg.eps2, g)
        worst = max(worst, float(np.abs(m.grade_casimir_spectrum(t, g) - expected).max()),
                    float(np.abs(grade_spectrum(float(cfg.mu1), float(cfg.mu2), cfg.eps1, cfg.eps2, g)
                                 - expected).max()))
    rows.append(numeric_result("grade_spectrum", "Q(12) on grade g has eigenvalues -eps12(j) mu12(j), j <= g",
                               worst, 1e-9))
    report = RelationReport("clebsch_gordan", tuple(rows), {"cutoff": cutoff, "j_max": j_max})
    if cfg.csv:
        with open(cfg.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(result.to_csv())
    return SuiteResult("cg", [report], {"table": result.to_dict()})


def run_howe(cfg: RunConfig) -> SuiteResult:
    from dualhahn import howe as m
    from dualhahn.spinor_commutant import build_spinor_model

    basis, backend = _algebra_backend(cfg)
    model = build_spinor_model(*cfg.partition, cfg.cutoff_for("howe"), backend, basis)
    h = m.build_howe(model)
    reports = [
        m.check_osp_copies(h, cfg.tolerance, cfg.jobs),
        m.check_dictionary(h, cfg.tolerance, cfg.jobs),
        m.check_commuting_actions(h, cfg.tolerance, cfg.jobs),
        m.check_casimir_correspondence(h, cfg.tolerance, cfg.jobs),
        m.check_squared_casimir(h, cfg.tolerance, cfg.jobs),
    ]
    if cfg.partition == (2, 2):
        reports.append(m.kappa_bridge(h, cfg.tolerance, cfg.jobs))
    reports.append(m.casimir_spectral_scan())
    return SuiteResult("howe", reports, {"dimension": model.space.dimension, "partition": list(cfg.partition)})


RUNNERS = {"sd2": run_sd2, "commutant": run_commutant, "osp": run_osp, "cg": run_cg, "howe": run_howe}


def run_suite(name: str, cfg: RunConfig) -> SuiteResult:
    start = time.perf_counter()
    with budget_override(cfg.budget):
        result = RUNNERS[name](cfg)
    result.seconds = time.perf_counter() - start
    return result


def run_suites(cfg: RunConfig) -> list[SuiteResult]:
    names = cfg.suites()
    if cfg.jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=min(cfg.jobs, len(names))) as pool:
            return list(pool.map(lambda n: run_suite(n, cfg), names))
    return [run_suite(n, cfg) for n in names]


def build_report(cfg: RunConfig, results: list[SuiteResult], timing: bool = False) -> dict:
    return {
        "tool": "dualhahn",
        "version": __version__,
        "config": cfg.as_dict(),
        "passed": all(r.passed for r in results),
        "suites": [r.to_dict(timing) for r in results],
    }
