from fractions import Fraction

import numpy as np
import pytest

from dualhahn.dunkl_sd2 import (
    build_sd2,
    check_j3_spectrum,
    check_sd2,
    dual_hahn_assignment,
    identify_dual_hahn,
    j3_diagonal,
)
from dualhahn.opalg import Basis, is_zero_on_window

MU_PAIRS = [(Fraction(0), Fraction(0)), (Fraction(1, 3), Fraction(1, 5)), (Fraction(7, 5), Fraction(1, 2))]


@pytest.fixture(scope="module")
def sd2_default():
    return build_sd2(Fraction(1, 3), Fraction(1, 5), 6)


@pytest.mark.parametrize("mu1,mu2", MU_PAIRS)
def test_sd2_relations_exact(mu1, mu2):
    rep = check_sd2(build_sd2(mu1, mu2, 5))
    assert rep.passed, rep.failures
    assert len([r for r in rep.results if r.kind == "relation"]) == 9


def test_identification_all_six(sd2_default):
    rep = identify_dual_hahn(sd2_default)
    gating = [r for r in rep.results if not r.informational]
    assert rep.passed
    assert {r.tag for r in gating if r.kind == "relation"} == {"K1K2", "K1K3", "K2K3", "K1P", "K2P", "K3P"}
    assert all(r.verdict.verdict.value == "EXACT_ZERO" for r in gating)
    assert any(r.tag.startswith("central[nu") for r in gating)
    assert any(r.tag.startswith("central[sigma") for r in gating)
    assert any(r.tag.startswith("central[rho") for r in gating)


def test_display_form_of_k2k3_is_informational_failure(sd2_default):
    rep = identify_dual_hahn(sd2_default)
    display = [r for r in rep.results if r.informational and r.kind == "display"]
    assert len(display) == 1
    assert display[0].status == "FAIL"


def test_mirrored_identification_passes(sd2_default):
    rep = identify_dual_hahn(sd2_default, mirrored=True, include_display=False)
    assert all(r.status == "PASS" for r in rep.results)
    assert all(r.informational for r in rep.results)


def test_j3_is_diagonal_on_window(sd2_default):
    assert check_j3_spectrum(sd2_default).passed
    diag = np.array([complex(v) for v in j3_diagonal(sd2_default)])
    dense = sd2_default.J3.to_dense().astype(complex)
    cols = sd2_default.space.window(1)
    off = dense[:, cols] - np.diag(diag)[:, cols]
    assert np.abs(off).max() < 1e-12  # dense conversion goes through floats


def test_reflections_are_involutions(sd2_default):
    for R in (sd2_default.R1, sd2_default.R2):
        assert is_zero_on_window(R @ R - 1, 0).passed


def test_float_backend_agrees():
    r = build_sd2(Fraction(1, 3), Fraction(1, 5), 5, Basis.ORTHONORMAL)
    assert check_sd2(r).passed
    assert identify_dual_hahn(r).passed


def test_assignment_symbols(sd2_default):
    names = set(dual_hahn_assignment(sd2_default))
    assert {"K1", "K2", "K3", "P", "nu", "sigma", "rho"} <= names


def test_small_cutoff_rejected():
    with pytest.raises(ValueError):
        build_sd2(Fraction(1, 3), Fraction(1, 5), 2)
