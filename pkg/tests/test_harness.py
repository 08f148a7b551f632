import csv
import json
import os

import numpy as np
import pytest

from pynekhoro.errors import InvalidArgumentError, NotFittableError
from pynekhoro.harness import (
    CellRecord,
    ScanConfig,
    ScanResult,
    emit_outputs,
    fit_confinement,
    fit_power_law,
    read_scan_csv,
    run_scan,
    sample_initial_conditions,
)
from pynekhoro.problems import canonical_benchmark
from pynekhoro.solvers import State


@pytest.fixture(autouse=True)
def no_thread_override(monkeypatch):
    monkeypatch.delenv("NEKHORO_THREADS", raising=False)


def _small_config(eps_grid, count=3, t_max=5.0, nworkers=1):
    spec = canonical_benchmark(0.0)
    return ScanConfig(
        spec,
        eps_grid,
        sample_initial_conditions(spec, count, seed=4),
        t_max=t_max,
        rho=0.1,
        integrator={"step": 1e-2, "sample_stride": 10},
        K_detect=4,
        nworkers=nworkers,
        seed=4,
    )


def _synthetic_result(drifts):
    records = [
        CellRecord(eps, i, "ok", d, None, 0, 0.0, 0.0, 2 * eps, True)
        for i, (eps, d) in enumerate(drifts)
    ]
    return ScanResult(records, {"synthetic": True})


def test_initial_conditions():
    spec = canonical_benchmark(0.0, R=2.0)
    five = sample_initial_conditions(spec, 5, seed=9)
    three = sample_initial_conditions(spec, 3, seed=9)
    assert five[:3] == three
    for ic in five:
        assert np.abs(ic.I).max() < 1.0
        assert np.all((0.0 <= ic.theta) & (ic.theta < 1.0))
    assert sample_initial_conditions(spec, 3, seed=10) != three


def test_config_validation():
    spec = canonical_benchmark(0.0)
    with pytest.raises(InvalidArgumentError):
        ScanConfig(spec, [1e-3, 1e-2])
    with pytest.raises(InvalidArgumentError):
        ScanConfig(spec, [1e-2, 1e-2])
    with pytest.raises(InvalidArgumentError):
        ScanConfig(spec, [])
    with pytest.raises(InvalidArgumentError):
        ScanConfig(spec, [1e-2], [State([0.0, 0.0, 0.0], [0.6, 0.0, 0.0])])


def test_config_from_dict(tmp_path):
    doc = {
        "benchmark": "canonical",
        "eps_grid": [1e-2, 1e-3],
        "initial_conditions": {"count": 4, "seed": 2},
        "t_max": 10.0,
        "K_detect": 3,
    }
    path = tmp_path / "scan.json"
    path.write_text(json.dumps(doc))
    config = ScanConfig.load(str(path))
    assert len(config.initial_conditions) == 4
    assert config.seed == 2
    assert config.integrator["sample_stride"] == 100
    assert config.digest() == ScanConfig.from_dict(doc).digest()

    explicit = ScanConfig.from_dict(dict(doc, initial_conditions=[[0.1, 0.0, 0.0], {"theta": [0.5, 0.5, 0.5], "I": [0.0, 0.2, 0.0]}]))
    assert len(explicit.initial_conditions) == 2

    with pytest.raises(InvalidArgumentError):
        ScanConfig.from_dict(dict(doc, benchmark="unknown"))
    with pytest.raises(InvalidArgumentError):
        ScanConfig.from_dict({"eps_grid": [1e-2]})


def test_digest_ignores_worker_count():
    assert _small_config([1e-2], nworkers=1).digest() == _small_config([1e-2], nworkers=4).digest()
    assert _small_config([1e-2]).digest() != _small_config([1e-3]).digest()


def test_integrable_scan():
    result = run_scan(_small_config([0.0]))
    assert len(result.records) == 3
    for r in result.records:
        assert r.status == "ok"
        assert r.max_drift <= 1e-12
        assert r.escape_time is None
        assert r.audit_ok
    assert result.fit is None
    assert result.manifest["cells"] == 3


def test_scan_records_and_audit():
    config = _small_config([1e-2, 1e-3, 1e-4])
    result = run_scan(config)
    assert len(result.records) == 9
    assert [(r.eps, r.ic_index) for r in result.records] == [
        (eps, i) for eps in config.eps_grid for i in range(3)
    ]
    assert result.audit_violations() == 0
    assert result.manifest["config_digest"] == config.digest()
    assert result.manifest["spec_digest"] == config.spec.digest()


def test_scan_is_deterministic():
    assert run_scan(_small_config([1e-2, 1e-3])) == run_scan(_small_config([1e-2, 1e-3]))


def test_parallel_and_serial_scans_agree():
    serial = run_scan(_small_config([1e-2, 1e-3], nworkers=1))
    parallel = run_scan(_small_config([1e-2, 1e-3], nworkers=2))
    assert serial == parallel


def test_thread_override(monkeypatch):
    from pynekhoro.config import worker_count

    monkeypatch.setenv("NEKHORO_THREADS", "3")
    assert worker_count(8) == 3
    monkeypatch.setenv("NEKHORO_THREADS", "many")
    with pytest.raises(ValueError):
        worker_count()


def test_fit_exact_power_law():
    eps = np.geomspace(1e-2, 1e-6, 5)
    a_fit, c_fit, stderr = fit_power_law(eps, eps**0.25)
    assert a_fit == pytest.approx(0.25, abs=1e-12)
    assert c_fit == pytest.approx(1.0, rel=1e-10)
    assert stderr == pytest.approx(0.0, abs=1e-10)


def test_fit_noisy_power_law():
    rng = np.random.default_rng(0)
    eps = np.geomspace(1e-2, 1e-6, 9)
    drift = 3 * eps**0.5 * (1 + 0.01 * rng.standard_normal(eps.size))
    a_fit, c_fit, _ = fit_power_law(eps, drift)
    assert a_fit == pytest.approx(0.5, abs=0.02)
    assert c_fit == pytest.approx(3.0, rel=0.2)


def test_not_fittable():
    with pytest.raises(NotFittableError):
        fit_power_law([1e-2, 1e-3, 1e-4], [0.0, 0.0, 0.0])
    with pytest.raises(NotFittableError):
        fit_power_law([1e-2, 1e-3], [0.1, 0.01])
    with pytest.raises(NotFittableError):
        fit_confinement(_synthetic_result([(1e-2, 0.1), (1e-2, 0.2), (1e-2, 0.3)]))


def test_fit_confinement_uses_medians():
    drifts = []
    for eps in (1e-2, 1e-3, 1e-4):
        drifts += [(eps, eps**0.25), (eps, 2 * eps**0.25), (eps, 100.0 * eps**0.25)]
    a_fit, c_fit, _ = fit_confinement(_synthetic_result(drifts))
    assert a_fit == pytest.approx(0.25, abs=1e-12)
    assert c_fit == pytest.approx(2.0, rel=1e-10)


def test_emit_empty_result(tmp_path):
    paths = emit_outputs(ScanResult([], {}), str(tmp_path / "out"))
    with open(paths["csv"]) as fh:
        rows = list(csv.reader(fh))
    assert rows == [list(CellRecord.FIELDS)]
    with open(paths["plot"]) as fh:
        assert "<svg" in fh.read()
    with open(paths["summary"]) as fh:
        assert json.load(fh)["cells"] == 0


def test_emit_and_read_back(tmp_path):
    records = [
        CellRecord(1e-2, 0, "ok", 0.0123456789012345678, 12.5, 3, 1e-3, 1e-9, 0.0200001, True),
        CellRecord(1e-2, 1, "integration-failure"),
        CellRecord(1e-3, 0, "ok", 1.0 / 3.0, None, 0, 2e-4, 3e-10, 2e-3, False),
    ]
    result = ScanResult(records, {"seed": 1}, fit=(0.3, 1.2, 0.01))
    out = str(tmp_path / "out")
    paths = emit_outputs(result, out)
    assert sorted(os.listdir(out)) == ["drift_vs_eps.svg", "manifest.json", "scan.csv", "summary.json"]
    back = read_scan_csv(paths["csv"])
    assert len(back) == 3
    assert back == records
    with open(paths["summary"]) as fh:
        doc = json.load(fh)
    assert doc["failed_cells"] == 1
    assert doc["audit_violations"] == 1
    assert doc["fit"]["a_fit"] == 0.3

    # overwriting gives the same bytes
    with open(paths["plot"]) as fh:
        first = fh.read()
    emit_outputs(result, out)
    with open(paths["plot"]) as fh:
        assert fh.read() == first


@pytest.mark.slow
def test_benchmark_drift_trend():
    spec = canonical_benchmark(0.0)
    config = ScanConfig(
        spec,
        [1e-2, 1e-3, 1e-4],
        sample_initial_conditions(spec, 20, seed=0),
        t_max=1e4,
        rho=0.1,
        K_detect=5,
    )
    result = run_scan(config)
    medians = list(result.median_drifts().values())
    assert medians == sorted(medians, reverse=True)
    assert len(set(medians)) == 3
    assert result.fit is not None
    a_fit, _, stderr = result.fit
    assert a_fit > 0
    assert stderr < 0.15
    assert result.audit_violations() == 0
