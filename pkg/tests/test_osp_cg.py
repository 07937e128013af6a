import csv
import io
import json
from fractions import Fraction

import numpy as np
import pytest

from dualhahn.cg_oracle import grade_spectrum, oracle_vectors
from dualhahn.opalg import Basis, is_zero_on_window
from dualhahn.osp_cg import (
    CGError,
    build_cg_tensor,
    build_irrep,
    build_tensor,
    cg_report,
    check_coproduct_casimir,
    check_irrep,
    check_kappa_algebra,
    check_tensor,
    eps12,
    expected_casimir_spectrum,
    fix_phase,
    grade_casimir_spectrum,
    mu12,
    solve_cg,
)

EPS = [(1, 1), (1, -1), (-1, -1)]
THIRD, FIFTH = Fraction(1, 3), Fraction(1, 5)


@pytest.mark.parametrize("mu", [Fraction(0), THIRD, Fraction(7, 5)])
@pytest.mark.parametrize("eps", [1, -1])
def test_irrep_relations(mu, eps):
    ir = build_irrep(mu, eps, 8)
    rep = check_irrep(ir)
    assert rep.passed, rep.failures
    q = ir.Q.to_dense()
    assert np.allclose(np.diag(q), -eps * float(mu))


def test_irrep_parity_diagonal():
    ir = build_irrep(THIRD, -1, 5)
    assert [complex(ir.P.entry(n, n)).real for n in range(6)] == [-(-1) ** n for n in range(6)]


def test_mu_zero_is_ordinary_oscillator():
    ir = build_irrep(Fraction(0), 1, 5)
    assert is_zero_on_window(ir.Am @ ir.Ap - ir.Ap @ ir.Am - 1, 1).passed


def test_negative_mu_warns():
    with pytest.warns(UserWarning):
        build_irrep(Fraction(-1, 3), 1, 4)


@pytest.mark.parametrize("e1,e2", EPS)
def test_coproduct(e1, e2):
    t = build_tensor(build_irrep(THIRD, e1, 5), build_irrep(FIFTH, e2, 5))
    assert check_tensor(t).passed
    assert check_coproduct_casimir(t).passed


def test_coproduct_degenerate_mu_zero():
    t = build_tensor(build_irrep(Fraction(0), 1, 6), build_irrep(Fraction(0), 1, 6))
    assert check_coproduct_casimir(t).passed


def test_perturbed_casimir_is_nonzero():
    t = build_tensor(build_irrep(THIRD, 1, 5), build_irrep(FIFTH, 1, 5))
    rep = check_coproduct_casimir(t, perturbed=True)
    assert rep.passed  # a negative control passes when it is nonzero
    assert rep.results[0].verdict.max_abs > 0


@pytest.mark.parametrize("e1,e2", EPS)
def test_kappa_algebra(e1, e2):
    t = build_tensor(build_irrep(THIRD, e1, 6), build_irrep(FIFTH, e2, 6))
    rep = check_kappa_algebra(t)
    assert rep.passed
    display = [r for r in rep.results if r.informational]
    assert display and all(r.status == "FAIL" for r in display)


def test_coupled_labels():
    assert mu12(THIRD, FIFTH, 2) == THIRD + FIFTH + 2 + Fraction(1, 2)
    assert [eps12(1, -1, j) for j in range(3)] == [-1, 1, -1]


def test_fix_phase():
    v = fix_phase(np.array([0, -2j, 1]))
    assert v[1].real > 0 and abs(v[1].imag) < 1e-15


@pytest.fixture(scope="module")
def cg10():
    t = build_cg_tensor(THIRD, FIFTH, 1, 1, 10)
    return t, solve_cg(t, 4)


def test_cg_residuals(cg10):
    _, res = cg10
    assert res.orthonormality_residual() <= 1e-10
    assert res.eigen_residual() <= 1e-10
    summary = cg_report(res, oracle_vectors)
    assert summary["oracle_max_deviation"] <= 1e-8
    assert summary["passed"]


@pytest.mark.parametrize("e1,e2", EPS)
def test_cg_against_oracle_all_signs(e1, e2):
    t = build_cg_tensor(FIFTH, Fraction(7, 5), e1, e2, 7)
    res = solve_cg(t, 3)
    assert cg_report(res, oracle_vectors)["passed"]


def test_cg_coefficients_and_selection_rule(cg10):
    _, res = cg10
    assert res.coefficient(0, 0, 0, 0) == pytest.approx(1.0)
    assert res.coefficient(1, 2, 1, 1) == 0j
    with pytest.raises(KeyError):
        res.coefficient(4, 6, 5, 5)


def test_grade_spectrum(cg10):
    t, _ = cg10
    for g in range(5):
        expected = expected_casimir_spectrum(THIRD, FIFTH, 1, 1, g)
        assert np.allclose(grade_casimir_spectrum(t, g), expected, atol=1e-9)
        assert np.allclose(grade_spectrum(1 / 3, 1 / 5, 1, 1, g), expected, atol=1e-9)


def test_csv_and_json(cg10):
    _, res = cg10
    rows = list(csv.reader(io.StringIO(res.to_csv())))
    assert rows[0] == ["j", "n12", "n1", "n2", "coefficient"]
    assert len(rows) - 1 == sum(1 for _ in res.rows())
    for j, n12, n1, n2, _ in rows[1:]:
        assert int(n1) + int(n2) == int(j) + int(n12)
    data = json.loads(res.to_json())
    assert data["j_max"] == 4 and len(data["families"]) == 5
    assert res.to_csv() == res.to_csv()


def test_solver_requires_orthonormal_float():
    t = build_tensor(build_irrep(THIRD, 1, 5, Basis.ANALYTIC), build_irrep(FIFTH, 1, 5, Basis.ANALYTIC))
    with pytest.raises(ValueError):
        solve_cg(t, 2)


def test_j_max_bounds():
    t = build_cg_tensor(THIRD, FIFTH, 1, 1, 4)
    with pytest.raises(ValueError):
        solve_cg(t, 4)
    assert isinstance(CGError("x"), RuntimeError)
