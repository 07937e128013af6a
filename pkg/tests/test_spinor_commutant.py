from fractions import Fraction

import pytest

from dualhahn.opalg import commutator, is_zero_on_window
from dualhahn.spinor_commutant import (
    DUAL_HAHN_CENTRALS,
    build_spinor_model,
    check_commutant_closure,
    check_commutant_property,
    check_generalized,
    check_o_n,
    clifford_normalization_audit,
    identify_dual_hahn,
    k2_shift,
)


@pytest.mark.parametrize("which", ["L", "Sigma", "J"])
def test_o4_relations(spinor22, which):
    model, _ = spinor22
    rep = check_o_n(model, which)
    relations = [r for r in rep.results if r.kind == "relation"]
    assert len(relations) == 15
    assert rep.passed, rep.failures
    assert all(r.verdict.verdict.value == "EXACT_ZERO" for r in relations)


def test_sigma_needs_no_window(spinor22):
    model, _ = spinor22
    rep = check_o_n(model, "Sigma")
    assert {r.verdict.budget for r in rep.results if r.kind == "relation"} == {0}


def test_commutant_property(spinor22):
    model, gens = spinor22
    rep = check_commutant_property(model, gens)
    assert len(rep.results) == 15
    assert rep.passed


def test_closure_relations(spinor22):
    model, gens = spinor22
    rep = check_commutant_closure(model, gens)
    assert rep.passed
    gating = {r.tag for r in rep.results if r.kind == "relation" and not r.informational}
    assert gating == {"K1K2", "K1K3", "K2K3", "K1r", "K2r", "K3r"}
    display = [r for r in rep.results if r.informational]
    assert display and all(r.status == "FAIL" for r in display)


def test_dual_hahn_identification(spinor22):
    model, gens = spinor22
    rep = identify_dual_hahn(model, gens)
    assert rep.passed
    assert set(DUAL_HAHN_CENTRALS) >= {"nu", "sigma", "rho"}


def test_l_and_sigma_commute(spinor22):
    model, _ = spinor22
    for key in model.L:
        for other in model.Sigma:
            assert is_zero_on_window(commutator(model.L[key], model.Sigma[other]), 2).passed


def test_k2_shift_values():
    assert k2_shift(4) == Fraction(3, 4)
    assert k2_shift(6) == Fraction(5, 4)


def test_generalized_partition():
    rep = check_generalized(2, 4, 2)
    assert rep.passed


def test_clifford_audit_prefers_unit_normalization():
    rep = clifford_normalization_audit()
    passes = rep.meta["passes_with"]
    assert all("gamma" in ok for ok in passes.values())
    only_unit = [tag for tag, ok in passes.items() if ok == ["gamma"]]
    assert len(only_unit) == len(passes) - 1
    assert passes["K3r"] == ["gamma", "gamma/sqrt2"]


def test_odd_block_rejected():
    with pytest.raises(ValueError):
        build_spinor_model(3, 2, 3)
