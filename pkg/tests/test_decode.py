import numpy as np
import pytest

from sc_burst_lab import (
    BinaryMatrix,
    LiftSpec,
    apply_columns,
    band_splitting_permutation,
    build_base_matrix,
    burst_correctable,
    compute_wmax,
    lift,
    map_index_set,
    peel,
    random_permutation,
    span_of,
)

from oracles import (
    brute_contains_stopping_subset,
    peel_random_order,
    random_binary_matrix,
)


def _lifted_permuted(l, r, L, M, seed):
    base = build_base_matrix(l, r, L)
    b_star = apply_columns(base, band_splitting_permutation(r // l, L))
    return lift(b_star, LiftSpec(M, "random-permutation", seed))


def test_peel_empty_pattern():
    result = peel(build_base_matrix(3, 6, 3), set())
    assert result.success and result.residual == frozenset() and result.iterations == 0


def test_peel_block_pair_fails():
    result = peel(build_base_matrix(3, 6, 3), {1, 2})
    assert not result.success
    assert result.residual == frozenset({1, 2})


def test_peel_cross_block_pair_succeeds():
    result = peel(build_base_matrix(3, 6, 3), {1, 3})
    assert result.success and result.residual == frozenset()
    assert result.iterations >= 1


def test_peel_rejects_out_of_range():
    with pytest.raises(IndexError):
        peel(build_base_matrix(3, 6, 3), {0, 1})
    with pytest.raises(IndexError):
        peel(build_base_matrix(3, 6, 3), {7})


def test_burst_empty_is_correctable():
    assert burst_correctable(build_base_matrix(3, 6, 3), 1, 0)


def test_burst_out_of_bounds():
    b = build_base_matrix(3, 6, 3)
    with pytest.raises(IndexError):
        burst_correctable(b, 0, 2)
    with pytest.raises(IndexError):
        burst_correctable(b, 6, 2)


def test_burst_covering_block_pair_fails():
    assert not burst_correctable(build_base_matrix(3, 6, 3), 1, 2)


def test_guaranteed_burst_on_lifted_permuted_code():
    # every burst no longer than (L-1)*M is guaranteed correctable
    h = _lifted_permuted(3, 6, 8, 4, seed=11)
    assert burst_correctable(h, 1, 28)
    assert burst_correctable(h, h.cols - 28 + 1, 28)


def test_wmax_of_base_matrices():
    assert compute_wmax(build_base_matrix(3, 6, 3)).wmax == 1
    b_star = apply_columns(build_base_matrix(3, 6, 3), band_splitting_permutation(2, 3))
    report = compute_wmax(b_star)
    assert report.wmax == 3
    assert report.lambda_max == report.wmax / report.n == 0.5


def test_wmax_of_lifted_permuted_inside_open_interval():
    for seed in (0, 1):
        report = compute_wmax(_lifted_permuted(3, 6, 8, 4, seed))
        assert 28 < report.wmax < 36


def test_wmax_witness_is_tight():
    rng = np.random.default_rng(23)
    for _ in range(30):
        m = BinaryMatrix(random_binary_matrix(rng, max_rows=7, max_cols=12))
        report = compute_wmax(m)
        n = m.cols
        assert report.lambda_max.denominator <= n
        if report.wmax == n:
            assert report.witness_start is None
            continue
        s = report.witness_start
        assert not burst_correctable(m, s, report.wmax + 1)
        for start in range(1, s):
            assert burst_correctable(m, start, report.wmax + 1)
        for start in range(1, n - report.wmax + 1):
            assert burst_correctable(m, start, report.wmax)


def test_wmax_zero_column():
    m = BinaryMatrix([[1, 0, 1], [1, 0, 0]])
    report = compute_wmax(m)
    assert report.wmax == 0 and report.lambda_max == 0
    assert report.witness_start == 2


def test_wmax_full_when_no_stopping_sets():
    m = BinaryMatrix([[1, 0], [0, 1]])
    report = compute_wmax(m)
    assert report.wmax == 2 and report.witness_start is None


def test_peel_monotone_under_supersets():
    rng = np.random.default_rng(17)
    checked = 0
    while checked < 25:
        a = random_binary_matrix(rng, max_rows=8, max_cols=12)
        m = BinaryMatrix(a)
        size = int(rng.integers(1, m.cols + 1))
        e = {int(v) + 1 for v in rng.choice(m.cols, size=size, replace=False)}
        if peel(m, e).success:
            continue
        rest = sorted(set(range(1, m.cols + 1)) - e)
        extra = {int(v) for v in rng.choice(rest, size=min(2, len(rest)), replace=False)} if rest else set()
        assert not peel(m, e | extra).success
        checked += 1


def test_peel_matches_brute_force_oracle():
    rng = np.random.default_rng(41)
    for _ in range(60):
        a = random_binary_matrix(rng, max_rows=8, max_cols=12)
        m = BinaryMatrix(a)
        size = int(rng.integers(1, m.cols + 1))
        e = {int(v) + 1 for v in rng.choice(m.cols, size=size, replace=False)}
        assert peel(m, e).success == (not brute_contains_stopping_subset(a, e))


def test_peel_residual_is_schedule_independent():
    rng = np.random.default_rng(53)
    for _ in range(40):
        a = random_binary_matrix(rng, max_rows=8, max_cols=12)
        m = BinaryMatrix(a)
        size = int(rng.integers(1, m.cols + 1))
        e = {int(v) + 1 for v in rng.choice(m.cols, size=size, replace=False)}
        expected = peel(m, e).residual
        for _ in range(3):
            assert peel_random_order(a, e, rng) == expected


def test_peel_success_is_permutation_covariant():
    rng = np.random.default_rng(67)
    for _ in range(30):
        a = random_binary_matrix(rng, max_rows=7, max_cols=11)
        m = BinaryMatrix(a)
        p = random_permutation(m.cols, seed=int(rng.integers(1 << 30)))
        size = int(rng.integers(1, m.cols + 1))
        e = {int(v) + 1 for v in rng.choice(m.cols, size=size, replace=False)}
        direct = peel(m, e).success
        transported = peel(apply_columns(m, p), map_index_set(e, p)).success
        assert direct == transported


def test_wmax_equals_span_minus_one_small():
    rng = np.random.default_rng(71)
    for _ in range(40):
        m = BinaryMatrix(random_binary_matrix(rng, max_rows=7, max_cols=12))
        assert compute_wmax(m).wmax == span_of(m, method="exhaustive") - 1


def test_sparse_and_dense_agree():
    from sc_burst_lab import SparseParityCheck

    rng = np.random.default_rng(83)
    for _ in range(10):
        m = BinaryMatrix(random_binary_matrix(rng, max_rows=6, max_cols=10))
        h = SparseParityCheck.from_dense(m)
        assert compute_wmax(m) == compute_wmax(h)
