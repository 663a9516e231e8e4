from fractions import Fraction

import pytest

from sc_burst_lab import (
    CodeParams,
    LiftSpec,
    build_base_matrix,
    design_rate,
    lift,
    row_weights,
)


def test_params_reject_bad_ratio():
    with pytest.raises(ValueError):
        CodeParams(3, 7, 4)
    with pytest.raises(ValueError):
        CodeParams(3, 2, 4)
    with pytest.raises(ValueError):
        CodeParams(3, 6, 0)
    with pytest.raises(ValueError):
        build_base_matrix(4, 6, 2)


def test_params_derived_quantities():
    p = CodeParams(3, 6, 8, 4)
    assert p.k == 2
    assert p.n == 2 * 8 * 4
    assert p.base_rows == 10 and p.base_cols == 16


def test_base_single_section_is_all_ones():
    b = build_base_matrix(3, 6, 1)
    assert b.rows == 3 and b.cols == 2
    assert row_weights(b) == (2, 2, 2)
    assert b.to_array().sum() == 6


def test_base_363_structure():
    b = build_base_matrix(3, 6, 3)
    assert (b.rows, b.cols) == (5, 6)
    expected = {1: (1, 1, 1, 0, 0), 3: (0, 1, 1, 1, 0), 5: (0, 0, 1, 1, 1)}
    for j, col in expected.items():
        assert b.column(j) == col
        assert b.column(j + 1) == col


def test_base_245_row_weights():
    b = build_base_matrix(2, 4, 5)
    assert (b.rows, b.cols) == (6, 10)
    weights = row_weights(b)
    assert set(weights) <= {2, 4}
    assert weights[1:5] == (4, 4, 4, 4)


@pytest.mark.parametrize("l,r,L", [(2, 4, 3), (3, 6, 4), (3, 9, 3), (4, 8, 5)])
def test_base_column_and_row_weight_invariants(l, r, L):
    b = build_base_matrix(l, r, L)
    a = b.to_array()
    assert (a.sum(axis=0) == l).all()
    weights = a.sum(axis=1)
    assert (weights <= r).all()
    # fully overlapped rows l..L carry the maximal weight
    assert (weights[l - 1:L] == r).all()


@pytest.mark.parametrize("l,r,L", [(2, 4, 4), (3, 6, 3), (4, 8, 2)])
def test_columns_equal_iff_same_block(l, r, L):
    b = build_base_matrix(l, r, L)
    k = r // l
    for alpha in range(1, b.cols + 1):
        for beta in range(1, b.cols + 1):
            same_block = (alpha - 1) // k == (beta - 1) // k
            assert (b.column(alpha) == b.column(beta)) == same_block


def test_design_rate_values():
    assert design_rate(CodeParams(3, 6, 3)) == Fraction(1, 6)
    assert design_rate(CodeParams(3, 6, 128)) == Fraction(63, 128)
    assert float(design_rate(CodeParams(3, 6, 128))) == 0.4921875


def test_design_rate_limit_and_identity():
    for l, r, L in [(3, 6, 5), (2, 4, 9), (4, 8, 3)]:
        p = CodeParams(l, r, L)
        assert design_rate(p) == 1 - Fraction(L + l - 1, p.k * L)
    # converges to 1 - 1/k as L grows
    huge = design_rate(CodeParams(3, 6, 10 ** 6))
    assert abs(huge - Fraction(1, 2)) == Fraction(1, 10 ** 6)


@pytest.mark.parametrize("style", ["random-permutation", "circulant-shift", "identity"])
def test_lift_m1_is_base(style):
    b = build_base_matrix(3, 6, 2)
    assert lift(b, LiftSpec(1, style, seed=9)).to_dense() == b


def test_lift_identity_style_dimensions_and_weights():
    b = build_base_matrix(3, 6, 3)
    h = lift(b, LiftSpec(4, "identity"))
    assert (h.rows, h.cols) == (20, 24)
    assert all(len(h.col_rows(j)) == 3 for j in range(1, 25))


def test_lift_deterministic_per_seed():
    b = build_base_matrix(3, 6, 3)
    spec = LiftSpec(5, "random-permutation", seed=42)
    assert lift(b, spec) == lift(b, spec)
    assert lift(b, spec) != lift(b, LiftSpec(5, "random-permutation", seed=43))


@pytest.mark.parametrize("style", ["random-permutation", "circulant-shift"])
def test_lift_blocks_are_permutation_matrices(style):
    b = build_base_matrix(2, 4, 3)
    M = 5
    h = lift(b, LiftSpec(M, style, seed=3)).to_dense().to_array()
    base = b.to_array()
    for i in range(b.rows):
        for j in range(b.cols):
            block = h[i * M:(i + 1) * M, j * M:(j + 1) * M]
            if base[i, j]:
                assert (block.sum(axis=0) == 1).all()
                assert (block.sum(axis=1) == 1).all()
            else:
                assert block.sum() == 0


def test_lift_preserves_column_weight():
    b = build_base_matrix(3, 6, 4)
    h = lift(b, LiftSpec(7, "random-permutation", seed=1))
    assert all(len(h.col_rows(j)) == 3 for j in range(1, h.cols + 1))
    assert (h.rows, h.cols) == (7 * 6, 7 * 8)
