import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_scenario
from oracles import binomial_sigma, brute_force_cutoff
from sweepwidth import HumanEye
from sweepwidth.experiment import (
    DetectionData,
    ExperimentConfig,
    Mode,
    Scenario,
    ScenarioError,
    gated_detect,
    gated_detect_many,
    place_objects,
    rng_for,
    run_experiment,
)
from sweepwidth.objects import SearchObject


def mc(**kw):
    return ExperimentConfig(mode=Mode.MONTE_CARLO, **kw)


def test_placement_is_deterministic():
    cfg = mc(rows=5, columns=10, seed=123)
    a, b = place_objects(cfg), place_objects(cfg)
    assert a.tolist() == b.tolist()
    assert len(a) == 5


@given(st.integers(1, 500), st.integers(1, 50), st.integers(0, 2**64 - 1))
def test_placement_in_range(rows, columns, seed):
    pos = place_objects(mc(rows=rows, columns=columns, seed=seed))
    assert len(pos) == rows
    assert pos.min() >= 1 and pos.max() <= columns


@pytest.mark.parametrize("seed", [0, 42, 2**63 + 5])
def test_placement_uniform(seed):
    rows, columns = 200_000, 10
    counts = np.bincount(place_objects(mc(rows=rows, columns=columns, seed=seed)),
                         minlength=columns + 1)[1:]
    sigma = binomial_sigma(rows, 1 / columns)
    assert np.all(np.abs(counts - rows / columns) <= 5 * sigma)


def test_placement_rejects_exhaustive():
    with pytest.raises(ValueError):
        place_objects(ExperimentConfig(mode=Mode.EXHAUSTIVE))


def test_streams_differ():
    a = rng_for(42, 0).integers(1, 1000, 20)
    b = rng_for(42, 1).integers(1, 1000, 20)
    assert a.tolist() != b.tolist()
    assert rng_for(42, 3).integers(1, 1000, 20).tolist() == rng_for(42, 3).integers(1, 1000, 20).tolist()


def test_config_validation():
    for kw in [{"rows": 0}, {"columns": 0}, {"seed": -1}, {"seed": 2**64}, {"mode": "bogus"}]:
        with pytest.raises(ValueError):
            ExperimentConfig(**kw)
    assert ExperimentConfig(mode="mc").mode is Mode.MONTE_CARLO


def test_scenario_derived_fields():
    s = make_scenario(1, 150, 1.9)
    assert s.horizon_km == pytest.approx(46.908, abs=1e-3)
    assert s.effective_altitude_m == 149
    assert s.visibility_m == 1900


def test_scenario_requires_altitude_above_object():
    with pytest.raises(ScenarioError):
        Scenario(SearchObject("tall", 150), 150, 1.9)
    with pytest.raises(ScenarioError):
        make_scenario(1, 150, 0)


@pytest.mark.parametrize("size, vis, x, expected", [
    (1, 37, 50_000, False),   # beyond the 46908 m horizon
    (92, 37, 46_908, False),
    (92, 37, 46_907, True),
    (1, 1.9, 1901, False),    # beyond visibility
    (1, 1.9, 1900, True),
    (1, 37, 7000, True),      # Rayleigh cutoff 7450 m
    (1, 37, 7450, True),
    (1, 37, 7451, False),
])
def test_gated_detect(eye, size, vis, x, expected):
    assert gated_detect(eye, make_scenario(size, 150, vis), x) is expected


def test_unlimited_threshold_is_inclusive(eye):
    s = make_scenario(92, 150, 37)
    assert gated_detect(eye, s, 40_000)
    assert not gated_detect(eye, s, 40_000, unlimited_visibility_km=38)
    assert gated_detect(eye, make_scenario(92, 150, 40), 40_000)


class CountingSensor:
    """Scalar-only sensor: exercises the fallback path."""

    def __init__(self, limit):
        self.limit = limit
        self.calls = 0

    def detect(self, effective_altitude_m, object_size_m, lateral_m):
        self.calls += 1
        return lateral_m <= self.limit


def test_scalar_sensor_fallback():
    s = make_scenario(1, 150, 1.9)
    sensor = CountingSensor(limit=1000)
    hit = gated_detect_many(sensor, s, np.arange(1, 3001))
    assert hit.sum() == 1000
    assert sensor.calls == 1900  # gates filter before the sensor is asked


def test_vectorised_gate_matches_scalar(eye):
    x = np.arange(1, 54201)
    for size, alt, vis in [(1, 150, 1.9), (1, 600, 37), (25, 300, 27.8), (92, 150, 37)]:
        s = make_scenario(size, alt, vis)
        many = gated_detect_many(eye, s, x)
        scalar = [gated_detect(eye, s, int(v)) for v in x[::53]]
        assert many[::53].tolist() == scalar


def test_exhaustive_low_visibility(eye):
    data = run_experiment(eye, make_scenario(1, 150, 1.9), ExperimentConfig())
    f = data.fraction
    assert len(data) == 54200
    assert np.all(f[:1900] == 1.0) and np.all(f[1900:] == 0.0)
    assert data.total_opportunities == 54200


def test_single_row(eye):
    data = run_experiment(eye, make_scenario(4, 300, 9.3), mc(rows=1, seed=9))
    assert len(data) == 1
    (x, (d, n, frac)), = data.items()
    assert n == 1 and 1 <= x <= 54200


def test_monte_carlo_deterministic(eye):
    s = make_scenario(1, 150, 37)
    cfg = mc(rows=20_000, seed=3)
    assert run_experiment(eye, s, cfg) == run_experiment(eye, s, cfg)
    assert run_experiment(eye, s, cfg, stream=1) != run_experiment(eye, s, cfg, stream=2)


def test_exhaustive_ignores_seed(eye):
    s = make_scenario(6, 300, 18.5)
    a = run_experiment(eye, s, ExperimentConfig(seed=1, rows=3))
    b = run_experiment(eye, s, ExperimentConfig(seed=99, rows=7), stream=12)
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([1, 2, 5, 16, 37, 92]), st.sampled_from([150, 300, 600]),
       st.sampled_from([1.9, 5.6, 9.3, 18.5, 27.8, 37.0]), st.integers(1, 5000),
       st.integers(0, 2**32))
def test_monte_carlo_invariants(size, alt, vis, rows, seed):
    eye = HumanEye()
    s = make_scenario(size, alt, vis)
    data = run_experiment(eye, s, mc(rows=rows, seed=seed))
    assert data.total_opportunities == rows
    assert np.all((data.fraction == 0) | (data.fraction == 1))
    cut = brute_force_cutoff(size, alt, vis)
    assert np.all(data.fraction[data.x_m <= cut] == 1)
    assert np.all(data.fraction[data.x_m > cut] == 0)
    hits = data.x_m[data.detected > 0]
    if len(hits):
        assert hits.max() <= min(s.horizon_m, s.visibility_m if vis < 37 else np.inf)


def test_detection_data_mapping_view():
    d = DetectionData.from_mapping({2000: (3, 6), 1000: (5, 5)})
    assert list(d) == [1000, 2000]
    assert d[2000] == (3, 6, 0.5)
    assert 1000 in d and 1500 not in d
    with pytest.raises(KeyError):
        d[1500]


@pytest.mark.parametrize("x, det, opp", [
    ([1, 1], [0, 0], [1, 1]),
    ([2, 1], [0, 0], [1, 1]),
    ([0], [0], [1]),
    ([1], [2], [1]),
    ([1], [0], [0]),
    ([1], [-1], [1]),
])
def test_detection_data_invariants(x, det, opp):
    with pytest.raises(ValueError):
        DetectionData(x, det, opp)
