import io

import pytest

from sc_burst_lab import (
    CapacityError,
    ExperimentConfig,
    derive_seed,
    run_histogram,
    run_lambda_vs_l,
    run_verify_bounds,
    write_records,
)
from sc_burst_lab.experiments import SCHEMA_VERSION, default_max_n


def _strip_wall_time(header, rows):
    return [tuple(r[c] for c in header if c != "wall_time_s") for r in rows]


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig("nonsense", 3, 6, (4,))
    with pytest.raises(ValueError):
        ExperimentConfig("histogram", 3, 6, ())
    with pytest.raises(ValueError):
        ExperimentConfig("histogram", 3, 7, (4,))
    with pytest.raises(ValueError):
        ExperimentConfig("histogram", 3, 6, (4,), samples=0)


def test_derive_seed_deterministic_and_distinct():
    assert derive_seed(5, 0) == derive_seed(5, 0)
    assert derive_seed(5, 0) != derive_seed(5, 1)
    assert derive_seed(5, 0) != derive_seed(6, 0)
    assert derive_seed(5, 0, 1) != derive_seed(5, 1, 0)


def test_default_max_n_env(monkeypatch):
    monkeypatch.delenv("SC_BURST_MAX_N", raising=False)
    assert default_max_n() == 10_000
    monkeypatch.setenv("SC_BURST_MAX_N", "123")
    assert default_max_n() == 123


def test_lambda_vs_l_records():
    cfg = ExperimentConfig("lambda-vs-L", 3, 6, (1, 2), (2,), seed=3,
                           threshold_precision=5e-3)
    header, rows = run_lambda_vs_l(cfg)
    assert len(rows) == 4
    for row in rows:
        assert row["measurement"] == "ok"
        lam = float(row["measured_lambda"])
        assert 0.0 <= lam <= 1.0
        assert float(row["lambda_lower"]) < float(row["lambda_upper"])
    l1 = [r for r in rows if r["L"] == 1]
    # with a single section the split is the identity: identical bounds
    assert l1[0]["lambda_lower"] == l1[1]["lambda_lower"]
    assert l1[0]["lambda_upper"] == l1[1]["lambda_upper"]


def test_lambda_vs_l_measured_ratio_inside_bounds():
    cfg = ExperimentConfig("lambda-vs-L", 3, 6, (8,), (4,), seed=6,
                           threshold_precision=5e-3)
    _, rows = run_lambda_vs_l(cfg)
    permuted = next(r for r in rows if r["variant"] == "permuted")
    assert permuted["measurement"] == "ok"
    lam = float(permuted["measured_lambda"])
    assert 0.4375 < lam < 0.5625
    assert float(permuted["lambda_lower"]) < lam < float(permuted["lambda_upper"])
    conventional = next(r for r in rows if r["variant"] == "conventional")
    lam = float(conventional["measured_lambda"])
    assert 0.0 < lam < float(conventional["lambda_upper"])
    # the emitted ratio is exactly wmax/n at fixed precision
    wmax, n = int(conventional["measured_wmax"]), int(conventional["n"])
    assert conventional["measured_lambda"] == f"{wmax / n:.8f}"


def test_lambda_vs_l_skips_beyond_cap():
    cfg = ExperimentConfig("lambda-vs-L", 3, 6, (4,), (2,), seed=3, max_n=4,
                           threshold_precision=5e-3)
    _, rows = run_lambda_vs_l(cfg)
    assert all(r["measurement"] == "skipped" for r in rows)
    assert all(r["measured_lambda"] == "" for r in rows)
    assert all(float(r["lambda_upper"]) > 0 for r in rows)


def test_histogram_records_and_reproducibility():
    cfg = ExperimentConfig("histogram", 3, 6, (4,), (2,), samples=3, seed=9)
    header, rows = run_histogram(cfg)
    kinds = [r["kind"] for r in rows]
    assert kinds == ["random"] * 3 + ["bsp", "summary-min", "summary-median",
                                      "summary-max"]
    sampled = [float(r["lambda"]) for r in rows if r["kind"] == "random"]
    assert float(rows[-3]["lambda"]) == min(sampled)
    assert float(rows[-1]["lambda"]) == max(sampled)
    header2, rows2 = run_histogram(cfg)
    assert _strip_wall_time(header, rows) == _strip_wall_time(header2, rows2)


def test_histogram_rejects_oversized_instance():
    cfg = ExperimentConfig("histogram", 3, 6, (4,), (2,), samples=1, seed=1, max_n=4)
    with pytest.raises(CapacityError):
        run_histogram(cfg)


def test_verify_bounds_passes_and_reports():
    cfg = ExperimentConfig("verify-bounds", 3, 6, (3,), (1, 2), samples=2, seed=4)
    header, rows, all_pass = run_verify_bounds(cfg)
    assert all_pass
    assert len(rows) == 4
    for row in rows:
        assert row["base_wmax"] == "1"
        assert row["bsp_base_wmax"] == "3"
        assert row["conv_result"] == "pass" and row["bsp_result"] == "pass"
        m = int(row["M"])
        assert (int(row["conv_lower"]), int(row["conv_upper"])) == (0, 2 * m)
        assert (int(row["bsp_lower"]), int(row["bsp_upper"])) == (2 * m, 4 * m)


def test_verify_bounds_identity_lift_hits_base_value():
    # with M = 1 every lift collapses to the base matrix itself
    cfg = ExperimentConfig("verify-bounds", 3, 6, (5,), (1,), samples=1, seed=2)
    _, rows, all_pass = run_verify_bounds(cfg)
    assert all_pass
    assert rows[0]["bsp_wmax"] == "5" == rows[0]["bsp_base_wmax"]
    assert rows[0]["conv_wmax"] == "1"


def test_write_records_schema(tmp_path):
    cfg = ExperimentConfig("histogram", 3, 6, (2,), (2,), samples=1, seed=0)
    header, rows = run_histogram(cfg)
    buf = io.StringIO()
    write_records(buf, header, rows, cfg)
    lines = buf.getvalue().splitlines()
    assert lines[0] == f"# {SCHEMA_VERSION}"
    assert lines[1].startswith("# prng=numpy-pcg64 seed=0 experiment=histogram")
    assert lines[2] == ",".join(header)
    assert len(lines) == 3 + len(rows)
    path = tmp_path / "out.csv"
    write_records(str(path), header, rows, cfg)
    assert path.read_text().splitlines()[0] == f"# {SCHEMA_VERSION}"
