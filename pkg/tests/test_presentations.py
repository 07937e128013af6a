from fractions import Fraction

import pytest

from dualhahn.opalg import Operator, make_space
from dualhahn.oscillators import build_bosons, build_parabose
from dualhahn.presentations import (
    BUILTIN,
    ParseError,
    PresentationError,
    adhoc_presentation,
    builtin_presentation,
    format_expression,
    o_n_presentation,
    parse_expression,
    parse_presentation,
)
from dualhahn.presentations.verify import (
    MissingSymbolError,
    RealizationMap,
    budget_override,
    evaluate,
    verify,
    word_climb,
)

RELATION_COUNTS = {"dual_m1_hahn": 6, "sd2": 9, "osp12": 9, "commutant_closure": 6, "cg_kappa": 6}


@pytest.mark.parametrize("text", [
    "[A,B] = i*C",
    "{P,K1} = 0",
    "K3^2 + 1/2*K1*K2 - (3/4 - i)*P",
    "[[A,B],C]",
    "-A*B + 2",
])
def test_expression_round_trip(text):
    e = parse_expression(text.split("=")[0])
    assert parse_expression(format_expression(e)) == e


@pytest.mark.parametrize("bad", ["[A,B", "A +", "{A}", "2**", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_expression(bad)


@pytest.mark.parametrize("name", BUILTIN)
def test_builtin_round_trip(name):
    pres = builtin_presentation(name)
    assert len(pres.relations) == RELATION_COUNTS[name]
    again = parse_presentation(pres.to_text())
    assert again == pres
    assert set(again.display) == set(pres.display)


def test_display_variant_differs_only_where_declared():
    pres = builtin_presentation("dual_m1_hahn")
    disp = builtin_presentation("dual_m1_hahn", variant="display")
    changed = [r.tag for r, d in zip(pres.relations, disp.relations) if r != d]
    assert changed == list(pres.display)


def test_o_n_counts():
    o4 = o_n_presentation(4)
    assert len(o4.generators) == 6
    assert len(o4.relations) == 15
    assert builtin_presentation("o_n(3)").relations[0].text


def test_presentation_validation():
    with pytest.raises(PresentationError):
        adhoc_presentation("bad", ["A"], [("x", "[A,B] = 0")])
    with pytest.raises(PresentationError):
        adhoc_presentation("bad", ["A"], [("x", "A = 0")], involutions=["Z"])
    with pytest.raises(ParseError):
        parse_presentation("generators: A\nrelation x: A = 0\n")
    with pytest.raises(KeyError):
        builtin_presentation("nope")


def test_word_climb():
    space = make_space(1, 4)
    b = build_bosons(space)
    assign = {"a": b.a[0], "c": b.adag[0]}
    assert word_climb(("c",), assign) == 1
    assert word_climb(("a", "c"), assign) == 1
    assert word_climb(("c", "c", "a"), assign) == 1  # lowers first
    assert word_climb(("a", "a", "c", "c"), assign) == 2


def _parabose_osp(cutoff=8, mu=Fraction(1, 3)):
    space = make_space(1, cutoff)
    p = build_parabose(space, [mu])
    a, ad, R = p.a[0], p.adag[0], p.R[0]
    return {"A0": (ad @ a + a @ ad) * Fraction(1, 2), "Ap": ad, "Am": a, "P": R}


def test_parabose_realizes_osp12():
    rep = verify(RealizationMap(builtin_presentation("osp12"), _parabose_osp()))
    assert rep.passed
    assert all(r.status == "PASS" for r in rep.results)


def test_tautology_is_sound_and_zero_map_fails_nontrivial():
    space = make_space(1, 4)
    zero = Operator.zero(space)
    taut = adhoc_presentation("t", ["A", "B"], [("t", "[A,B] + [B,A] = 0")])
    rep = verify(RealizationMap(taut, {"A": zero, "B": zero}))
    assert rep.passed
    # zero map cannot satisfy an inhomogeneous relation
    osp = verify(RealizationMap(builtin_presentation("osp12"), {k: zero for k in ("A0", "Ap", "Am", "P")}))
    assert not osp.passed
    assert osp.result("involution[P]").status == "FAIL"


def test_centrality_violation_detected():
    ops = _parabose_osp(4)
    pres = adhoc_presentation("c", ["A0"], [("r", "A0 - A0 = 0")], centrals=["Z"])
    rep = verify(RealizationMap(pres, {"A0": ops["A0"], "Z": ops["Ap"]}))
    assert not rep.passed
    assert rep.result("central[Z,A0]").status == "CENTRALITY_VIOLATION"


def test_missing_symbol():
    with pytest.raises(MissingSymbolError):
        RealizationMap(builtin_presentation("osp12"), {"A0": Operator.zero(make_space(1, 3))})


def test_budget_override_can_make_vacuous():
    rmap = RealizationMap(builtin_presentation("osp12"), _parabose_osp(3))
    with budget_override(4):
        rep = verify(rmap)
    assert not rep.passed
    assert {r.status for r in rep.results if r.kind == "relation"} == {"VACUOUS"}


def test_evaluate_matches_direct_product():
    ops = _parabose_osp(5)
    s = evaluate("Ap*Am - A0 + 1/2", ops)
    direct = ops["Ap"] @ ops["Am"] - ops["A0"] + Fraction(1, 2)
    assert s.matrix == direct.matrix
