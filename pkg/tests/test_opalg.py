from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualhahn.opalg import (
    Backend,
    DimensionError,
    ExactMatrix,
    FloatMatrix,
    GaussianRational,
    I,
    Operator,
    Verdict,
    commutator,
    is_zero_on_window,
    make_space,
)
from dualhahn.oscillators import build_bosons

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
gaussian = st.builds(GaussianRational, rationals, rationals)


def exact_from_dense(seed: int, n: int = 4, density: float = 0.5) -> ExactMatrix:
    rng = np.random.default_rng(seed)
    entries = []
    for r in range(n):
        for c in range(n):
            if rng.random() < density:
                entries.append((r, c, GaussianRational(Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5))),
                                                       int(rng.integers(-3, 4)))))
    return ExactMatrix.from_entries((n, n), entries)


# -- scalars -----------------------------------------------------------------

@given(gaussian, gaussian, gaussian)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == GaussianRational(0)
    if not b.is_zero():
        assert (a / b) * b == a


def test_imaginary_unit():
    assert I * I == GaussianRational(-1)
    assert GaussianRational.parse("3/4") == GaussianRational(Fraction(3, 4))
    assert complex(GaussianRational(1, -2)) == 1 - 2j


# -- sparse kernel -------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000), st.integers(0, 10_000))
def test_exact_matmul_associative_and_distributive(s1, s2, s3):
    a, b, c = exact_from_dense(s1), exact_from_dense(s2), exact_from_dense(s3)
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    dense = a.to_dense() @ b.to_dense()
    assert np.allclose((a @ b).to_dense(), dense)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000), st.integers(0, 10_000))
def test_jacobi_identity(s1, s2, s3):
    space = make_space(1, 3)
    a, b, c = (Operator(space, exact_from_dense(s)) for s in (s1, s2, s3))
    total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert total.matrix.is_zero()


def test_bigint_fallback_is_exact():
    big = 2**40
    m = ExactMatrix.from_entries((2, 2), [(0, 0, big), (0, 1, 1), (1, 1, big)])
    p = m @ m @ m
    assert p.is_bigint
    assert p.entry(0, 0) == GaussianRational(big**3)
    assert p.entry(0, 1) == GaussianRational(3 * big**2)
    small = p.scale(GaussianRational(Fraction(1, big**3)))
    assert small.entry(1, 1) == GaussianRational(1)


def test_float_and_exact_agree():
    a = exact_from_dense(7)
    b = exact_from_dense(8)
    fa, fb = a.to_float(), b.to_float()
    assert isinstance(fa, FloatMatrix)
    assert np.allclose((fa @ fb).to_dense(), (a @ b).to_dense())


# -- spaces --------------------------------------------------------------------

def test_space_dimensions_and_indexing():
    space = make_space(2, 3, 2)
    assert space.dimension == 16 * 4
    for k, (bosons, fermions) in enumerate(space.basis()):
        assert space.index(bosons, fermions) == k
        assert space.state(k) == (bosons, fermions)
        assert space.grades[k] == sum(bosons)


def test_window_columns():
    space = make_space(2, 3)
    assert set(space.grades[space.window(1)]) == {0, 1, 2}
    assert space.window(7).size == 0


def test_dimension_guard(monkeypatch):
    with pytest.raises(DimensionError) as info:
        make_space(4, 9, limit=1000)
    assert info.value.dimension == 10_000
    monkeypatch.setenv("DUALHAHN_MAX_DIM", "50")
    with pytest.raises(DimensionError):
        make_space(2, 9)
    assert make_space(1, 9).dimension == 10


def test_invalid_space_arguments():
    with pytest.raises(ValueError):
        make_space(1, 0)
    with pytest.raises(ValueError):
        make_space(-1, 3)


# -- windows and verdicts ------------------------------------------------------

def test_commutator_boundary_effect():
    space = make_space(1, 3)
    bos = build_bosons(space)
    x = commutator(bos.a[0], bos.adag[0]) - 1
    assert is_zero_on_window(x, 1).verdict is Verdict.EXACT_ZERO
    full = is_zero_on_window(x, 0)
    assert full.verdict is Verdict.RESIDUAL and not full.passed


def test_vacuous_window_never_passes():
    space = make_space(1, 3)
    v = is_zero_on_window(Operator.identity(space), 4)
    assert v.verdict is Verdict.VACUOUS
    assert not v.passed
    assert is_zero_on_window(Operator.zero(space), 2).passed


def test_float_tolerance():
    space = make_space(1, 2)
    tiny = Operator.identity(space, Backend.FLOAT) * 1e-13
    assert is_zero_on_window(tiny, 0).passed
    assert not is_zero_on_window(tiny * 1e6, 0).passed


@pytest.mark.parametrize("cutoff", [3, 4, 5])
def test_tracked_bounds_are_sound(cutoff):
    space = make_space(2, cutoff)
    bos = build_bosons(space)
    a1, a2 = bos.a
    c1, c2 = bos.adag
    for op in (c1 @ c2 @ a1, a2 @ c1 @ c1, c2 @ a1 @ a2 @ c1, c1 @ c1 @ c2):
        observed = op.observed_bounds()
        assert observed is not None
        assert observed[0] <= op.grade_raise
        assert observed[1] <= op.grade_lower


def test_window_soundness_against_larger_cutoff():
    """A product evaluated on its tracked window agrees with the same product
    computed at a cutoff two higher, restricted to shared low-grade states."""
    small, big = make_space(2, 3), make_space(2, 5)
    bs, bb = build_bosons(small), build_bosons(big)

    def word(b):
        return b.a[0] @ b.adag[0] @ b.adag[1] @ b.a[1] @ b.adag[0]

    ws, wb = word(bs), word(bb)
    cols = small.window(ws.climb)
    assert cols.size > 0
    for col in cols:
        bosons, _ = small.state(int(col))
        big_col = big.index(bosons)
        for row in range(small.dimension):
            rb, _ = small.state(row)
            assert ws.entry(row, int(col)) == wb.entry(big.index(rb), big_col)
