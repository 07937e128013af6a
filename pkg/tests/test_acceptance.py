"""Acceptance criteria, one test each.

Every test records a single ``ACCEPTANCE <n>: PASS|FAIL ...`` line; the lines
are printed in the pytest terminal summary and also when this file is run
directly with ``python3 tests/test_acceptance.py``. Tolerances and time
limits are pinned below.
"""

from __future__ import annotations

import subprocess
import sys
import time
from fractions import Fraction

import pytest

from dualhahn.cg_oracle import oracle_vectors
from dualhahn.dunkl_sd2 import build_sd2, check_sd2, identify_dual_hahn
from dualhahn.howe import (
    build_howe,
    check_casimir_correspondence,
    check_commuting_actions,
    check_dictionary,
    check_osp_copies,
)
from dualhahn.osp_cg import (
    build_cg_tensor,
    build_irrep,
    build_tensor,
    cg_report,
    check_coproduct_casimir,
    check_irrep,
    check_kappa_algebra,
    solve_cg,
)
from dualhahn.presentations.verify import budget_override
from dualhahn.spinor_commutant import (
    build_commutant,
    build_spinor_model,
    check_commutant_closure,
    check_commutant_property,
    check_o_n,
)

MU1, MU2 = Fraction(1, 3), Fraction(1, 5)
EXACT = "EXACT_ZERO"
CG_UNITARITY_TOL = 1e-10
CG_EIGEN_TOL = 1e-10
CG_ORACLE_TOL = 1e-8
LIMIT_O4_S = 60.0
LIMIT_COMMUTANT_S = 120.0
LIMIT_HOWE_S = 180.0

LINES: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    LINES[n] = line
    print(line)
    assert ok, line


def gating(report):
    return [r for r in report.results if not r.informational]


def all_exact(report, kind=None) -> bool:
    rows = [r for r in gating(report) if r.expect_zero and (kind is None or r.kind == kind)]
    return bool(rows) and all(r.verdict.verdict.value == EXACT for r in rows)


def test_criterion_1_o4_structure():
    start = time.perf_counter()
    model = build_spinor_model(2, 2, 4)
    counts, ok = {}, True
    with budget_override(2):
        for which in ("L", "Sigma", "J"):
            rep = check_o_n(model, which)
            rel = [r for r in rep.results if r.kind == "relation"]
            counts[which] = len(rel)
            ok &= len(rel) == 15 and rep.passed and all_exact(rep)
    elapsed = time.perf_counter() - start
    ok &= elapsed < LIMIT_O4_S
    record(1, ok, f"o(4) for -iL, -iSigma, J: {counts} relations EXACT_ZERO at (2,2), cutoff 4, budget 2; "
                  f"{elapsed:.1f}s < {LIMIT_O4_S:.0f}s")


def test_criterion_2_commutant():
    start = time.perf_counter()
    model = build_spinor_model(2, 2, 4)
    gens = build_commutant(model)
    comm = check_commutant_property(model, gens)
    closure = check_commutant_closure(model, gens)
    closure_rel = [r for r in gating(closure) if r.kind == "relation"]
    budgets = sorted({r.verdict.budget for r in closure_rel})
    with budget_override(5):
        literal_small = check_commutant_closure(model, gens)
    vacuous_at_4 = all(r.status == "VACUOUS" for r in gating(literal_small) if r.kind == "relation")
    # budget 5 needs cutoff >= 5 for a nonempty window; cutoff 6 leaves grades 0 and 1
    big = build_spinor_model(2, 2, 6)
    with budget_override(5):
        literal = check_commutant_closure(big, build_commutant(big))
    elapsed = time.perf_counter() - start
    ok = (len(comm.results) == 15 and comm.passed and all_exact(comm)
          and len(closure_rel) == 6 and closure.passed and all_exact(closure)
          and literal.passed and all_exact(literal) and vacuous_at_4
          and elapsed < LIMIT_COMMUTANT_S)
    record(2, ok, f"15 commutation checks + 6 closure relations EXACT_ZERO at cutoff 4 (tracked budgets {budgets}); "
                  f"literal budget 5: VACUOUS at cutoff 4, EXACT_ZERO at cutoff 6; {elapsed:.1f}s < "
                  f"{LIMIT_COMMUTANT_S:.0f}s")


def test_criterion_3_sd2():
    r = build_sd2(MU1, MU2, 6)
    sd2 = check_sd2(r)
    ident = identify_dual_hahn(r)
    rel = [x for x in gating(ident) if x.kind == "relation"]
    centrals = [x for x in gating(ident) if x.tag.startswith("central[")]
    covered = {x.tag.split("[")[1].split(",")[0] for x in centrals}
    ok = (sd2.passed and all_exact(sd2) and len(rel) == 6 and ident.passed and all_exact(ident)
          and {"nu", "sigma", "rho"} <= covered)
    record(3, ok, f"sd(2) at mu=(1/3,1/5), cutoff 6: {len(gating(sd2))} checks EXACT_ZERO; dual -1 Hahn "
                  f"identification {len(rel)} relations + {len(centrals)} centrality audits EXACT_ZERO")


def test_criterion_4_osp():
    irreps = [build_irrep(mu, eps, 8) for mu in (MU1, MU2) for eps in (1, -1)]
    irrep_ok = all(check_irrep(ir).passed and all_exact(check_irrep(ir)) for ir in irreps)
    t8 = build_tensor(build_irrep(MU1, 1, 8), build_irrep(MU2, 1, 8))
    casimir = check_coproduct_casimir(t8)
    t6 = build_tensor(build_irrep(MU1, 1, 6), build_irrep(MU2, 1, 6))
    kappa = check_kappa_algebra(t6)
    ok = irrep_ok and casimir.passed and all_exact(casimir) and kappa.passed and all_exact(kappa)
    record(4, ok, "osp(1|2) relations, sCasimir and Q = -eps*mu EXACT_ZERO for 4 irreps at cutoff 8; "
                  "coproduct Casimir closed form EXACT_ZERO at cutoff 8; kappa relations EXACT_ZERO at cutoff 6")


def test_criterion_5_howe():
    start = time.perf_counter()
    model = build_spinor_model(2, 2, 4)
    h = build_howe(model, build_commutant(model))
    copies = check_osp_copies(h)
    dictionary = check_dictionary(h)
    commuting = check_commuting_actions(h)
    casimir = check_casimir_correspondence(h)
    n_comm = len([r for r in commuting.results if r.expect_zero and r.tag.startswith("commuting")])
    n_cas = len([r for r in casimir.results if r.expect_zero])
    elapsed = time.perf_counter() - start
    ok = (all(rep.passed and all_exact(rep) for rep in (copies, dictionary, commuting, casimir))
          and len(dictionary.results) == 7 and n_comm == 24 and n_cas == 3 and elapsed < LIMIT_HOWE_S)
    record(5, ok, f"3 osp(1|2) copies, 7 dictionary identities, {n_comm} commuting checks, {n_cas} Casimir "
                  f"correspondences (3/4 shift) EXACT_ZERO at cutoff 4; {elapsed:.1f}s < {LIMIT_HOWE_S:.0f}s")


def test_criterion_6_cg():
    t = build_cg_tensor(MU1, MU2, 1, 1, 10)
    res = solve_cg(t, 4)
    summary = cg_report(res, oracle_vectors)
    unit, eig, dev = summary["orthonormality_residual"], summary["eigen_residual"], summary["oracle_max_deviation"]
    ok = unit <= CG_UNITARITY_TOL and eig <= CG_EIGEN_TOL and dev <= CG_ORACLE_TOL
    record(6, ok, f"CG at mu=(1/3,1/5), eps=(1,1), cutoff 10, j<=4: orthonormality {unit:.1e} <= "
                  f"{CG_UNITARITY_TOL:g}, eigenvalue {eig:.1e} <= {CG_EIGEN_TOL:g}, oracle {dev:.1e} <= "
                  f"{CG_ORACLE_TOL:g}")


def test_criterion_7_negative_controls():
    t = build_tensor(build_irrep(MU1, 1, 8), build_irrep(MU2, 1, 8))
    perturbed = check_coproduct_casimir(t, perturbed=True).results[0]
    model = build_spinor_model(2, 2, 4)
    casimir = check_casimir_correspondence(build_howe(model, build_commutant(model)))
    dropped = casimir.result("controls:C_1234_unshifted")
    ok = (perturbed.verdict.max_abs > 0 and not perturbed.expect_zero
          and dropped.verdict.max_abs > 0 and not dropped.expect_zero)
    record(7, ok, f"transposed P factor in the coproduct Casimir: residual {perturbed.verdict.max_abs:.3g}; "
                  f"dropped 3/4 shift: residual {dropped.verdict.max_abs:.3g}")


def test_criterion_8_determinism():
    cmd = [sys.executable, "-m", "dualhahn", "verify", "all", "--cutoff", "4", "--mu1", "1/3", "--mu2", "1/5",
           "--output", "json"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    ok = first.returncode == 0 and second.returncode == 0 and first.stdout == second.stdout and first.stdout
    record(8, bool(ok), f"two 'verify all' runs: exit {first.returncode}/{second.returncode}, "
                        f"{len(first.stdout)} bytes, identical={first.stdout == second.stdout}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
