"""End-to-end acceptance checks, one test per criterion."""
import math
import time

import numpy as np
import pytest

from gevrey_pdo import conjugation as cj
from gevrey_pdo.experiments.config import SUITES, default_config
from gevrey_pdo.experiments.report import write_csv
from gevrey_pdo.experiments.suites import run_suite
from gevrey_pdo.inequalities import compare_remark_constants, tri1_constant


def _timed(suite, **over):
    cfg = default_config(suite, seed=42)
    for section, values in over.items():
        getattr(cfg, section).update(values)
    t0 = time.perf_counter()
    recs = run_suite(cfg)
    return recs, time.perf_counter() - t0


def _select(recs, prefix):
    out = [r for r in recs if r.case_id.split("-", 1)[1].startswith(prefix)]
    assert out, prefix
    return out


def test_inequality_sweeps():
    recs, wall = _timed("inequalities")
    assert wall <= 120
    for name in ("tri1", "tri2", "poly"):
        sel = [r for r in _select(recs, name + "-") if "violations" in r.params]
        assert sum(r.params["samples"] for r in sel) >= 1_000_000
        assert sum(r.params["violations"] for r in sel) == 0
        assert {r.params["d"] for r in sel} == {1, 2, 3}
        assert {r.params["sigma"] for r in sel} == {round(0.1 * k, 1) for k in range(1, 10)}
        if name != "poly":
            assert {r.params["K"] for r in sel} == {1.5, 2.0, 10.0}
    assert all(r.passed for r in recs)


def test_tri1_constant_range_and_mean_value_witness():
    Ks = np.exp(np.linspace(math.log(1.001), math.log(1e3), 200))
    sigmas = np.exp(np.linspace(math.log(0.01), math.log(0.99), 200))
    vals = np.array([[tri1_constant(K, s) for s in sigmas] for K in Ks])
    assert vals.min() > 0 and vals.max() < 1
    w = compare_remark_constants(1.1, 0.9)
    assert w.mean_value_constant == pytest.approx(1.133, abs=5e-4)
    assert w.mean_value_constant > 1 > w.difference_constant


def test_embedding_nine_cases():
    recs, wall = _timed("embedding")
    assert wall <= 60
    assert len(recs) == 9
    assert all(r.margin >= 0 and r.passed for r in recs)


def test_quantization_oracle():
    recs, wall = _timed("quantization")
    assert wall <= 120
    assert len(recs) == 100
    assert {r.params["h"] for r in recs} == {0.0, 0.25, 0.5}
    assert all(r.measured <= 1e-8 for r in recs)


@pytest.fixture(scope="module")
def conjugation_records():
    return _timed("conjugation")


def test_conjugated_symbol_identity(conjugation_records):
    recs, wall = conjugation_records
    sel = _select(recs, "identity")
    assert len(sel) == 50
    assert all(r.measured <= 1e-6 for r in sel)
    assert sum(r.wall_ms for r in sel) / 1000 <= 120


def test_multiplication_constant_stable(conjugation_records):
    (rec,) = _select(conjugation_records[0], "multiplication-constant")
    assert rec.params["C_min"] > 0
    assert (rec.params["C_max"] - rec.params["C_min"]) / rec.params["C_min"] <= 0.2


def test_action_norm_drift_and_necessity():
    recs, _ = _timed("action")
    (drift,) = _select(recs, "drift")
    assert math.isfinite(drift.params["norm_coarse"]) and math.isfinite(drift.params["norm_fine"])
    assert drift.measured <= 0.2
    (diag,) = _select(recs, "diagnostic")
    assert diag.params["tau_prime"] > diag.params["tau"]
    assert diag.params["band_high"] == 4 * diag.params["band_low"]
    assert diag.measured >= 10
    assert all(r.passed for r in recs)


@pytest.fixture(scope="module")
def symbol5_records():
    return _timed("symbol5")[0]


def test_expansion_remainder_orders(symbol5_records):
    sel = _select(symbol5_records, "expansion")
    assert sorted(r.params["k"] for r in sel) == [0, 1, 2]
    for r in sel:
        pred = max(0 - (r.params["k"] + 1) * 0.5, 0 - 2 + 0.5)
        assert r.params["predicted"] == pytest.approx(pred)
        assert r.measured <= pred + 0.3


def test_lemma51_envelope(symbol5_records):
    sel = _select(symbol5_records, "envelope")
    pairs = {(r.params["alpha"], r.params["beta"]) for r in sel}
    assert pairs == {(0, 0), (1, 0), (0, 1)}
    for pair in pairs:
        group = [r for r in sel if (r.params["alpha"], r.params["beta"]) == pair]
        assert len({r.params["c_fit"] for r in group}) == 1
        sweep = sorted(round(r.params["gap"], 12) for r in group if not r.params["held_out"])
        assert sweep == [0.05, 0.1, 0.2, 0.4]
        assert all(r.passed for r in group)


def test_region_partition_totality():
    rng = np.random.default_rng(2024)
    n = 1_000_000
    d = 2
    K = np.exp(rng.uniform(math.log(1.001), math.log(100), n))
    xi = rng.normal(size=(n, d)) * np.exp(rng.uniform(-2, 8, (n, 1)))
    eta = rng.normal(size=(n, d)) * np.exp(rng.uniform(-2, 8, (n, 1)))
    p1, p2, p3 = cj.region_predicates(xi, eta, K)
    labelled = p1.astype(int) + (p2 & ~p1) + (p3 & ~p1 & ~p2)
    assert np.all(labelled == 1)
    labels = cj.classify_regions(xi, eta, K)
    assert np.array_equal(labels, np.where(p1, 1, np.where(p2, 2, 3)))


def _strip_wall(path):
    lines = path.read_text().splitlines()
    return [line.rsplit(",", 1)[0] for line in lines]


@pytest.mark.parametrize("suite", SUITES)
def test_determinism(suite, tmp_path):
    over = {"quantization": {"samples": {"cases": 12}}, "conjugation": {"samples": {"identity_cases": 5}},
            "inequalities": {"samples": {"per_inequality": 100_000}}}.get(suite, {})
    first = write_csv(_timed(suite, **over)[0], tmp_path / "a.csv")
    second = write_csv(_timed(suite, **over)[0], tmp_path / "b.csv")
    assert first.read_text().splitlines()[0].endswith(",wall_ms")
    assert _strip_wall(first) == _strip_wall(second)
