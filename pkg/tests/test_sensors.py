import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sweepwidth.sensors import (
    ConfigError,
    HumanEye,
    HumanEyeConfig,
    Sensor,
    angular_resolution,
    eye_detect,
    min_resolvable_size,
    rayleigh_cutoff_m,
)

THETA = 1.342e-4


def test_angular_resolution_unit_ratio():
    assert angular_resolution(HumanEyeConfig(1e-3, 1e-3)) == pytest.approx(1.22)


def test_angular_resolution_defaults(eye_cfg):
    assert angular_resolution(eye_cfg) == pytest.approx(1.342e-4, abs=1e-7)


def test_doubling_pupil_halves_theta():
    a = angular_resolution(HumanEyeConfig(550e-9, 4e-3))
    b = angular_resolution(HumanEyeConfig(550e-9, 8e-3))
    assert b == pytest.approx(a / 2)


@pytest.mark.parametrize("lam, d", [(0, 5e-3), (550e-9, 0), (-1, 1), (1, -1), (math.nan, 1)])
def test_config_rejects_non_positive(lam, d):
    with pytest.raises(ConfigError):
        HumanEyeConfig(lam, d)


def test_cli_units():
    cfg = HumanEyeConfig.from_cli_units(550, 5.0)
    assert cfg.wavelength_m == pytest.approx(550e-9)
    assert cfg.pupil_diameter_m == pytest.approx(5e-3)


@pytest.mark.parametrize("alt, x, expected", [
    (0, 7451.56, 1.0000),
    (149, 7000, 0.9396),
    (0, 0, 0.0),
])
def test_min_resolvable_size(alt, x, expected):
    assert min_resolvable_size(THETA, alt, x) == pytest.approx(expected, abs=1e-3)


def test_min_resolvable_size_needs_positive_theta():
    with pytest.raises(ValueError):
        min_resolvable_size(0, 1, 1)


@pytest.mark.parametrize("size, alt, x, expected", [
    (1, 149, 7000, True),
    (1, 149, 7500, False),
    (92, 0, 1, True),
])
def test_eye_detect(eye_cfg, size, alt, x, expected):
    assert eye_detect(eye_cfg, alt, size, x) is expected


def test_eye_detect_rejects_bad_size(eye_cfg):
    with pytest.raises(ValueError):
        eye_detect(eye_cfg, 10, 0, 10)


def test_boundary_is_inclusive():
    # theta = 1 / 2 ** 10 makes the arithmetic exact: size 3 resolves a
    # slant range of exactly 3072 m, here a 3-4-5 triangle scaled by 614.4.
    cfg = HumanEyeConfig(wavelength_m=1.0, pupil_diameter_m=1.22 * 2**10)
    theta = angular_resolution(cfg)
    assert 3 == theta * math.sqrt(1843.2 ** 2 + 2457.6 ** 2)
    assert eye_detect(cfg, 1843.2, 3, 2457.6)
    assert not eye_detect(cfg, 1843.2, 3, 2457.6 + 1e-6)


def test_human_eye_satisfies_protocol(eye):
    assert isinstance(eye, Sensor)
    assert eye.detect(149, 1, 7000) is True


@given(st.integers(1, 100), st.integers(0, 700), st.integers(0, 60000), st.integers(0, 60000))
def test_monotone_in_lateral_range(size, alt, x, y):
    eye = HumanEye()
    lo, hi = sorted((x, y))
    if eye.detect(alt, size, hi):
        assert eye.detect(alt, size, lo)


@given(st.integers(1, 100), st.integers(0, 700))
def test_detectable_set_matches_cutoff(size, alt):
    eye = HumanEye()
    cut = rayleigh_cutoff_m(eye.theta, alt, size)
    for x in (math.floor(cut) - 2, math.floor(cut) - 1, math.ceil(cut) + 1, math.ceil(cut) + 2):
        if x >= 0:
            assert eye.detect(alt, size, x) == (x <= cut)


@given(st.floats(0.01, 100), st.integers(1, 50), st.integers(0, 600), st.integers(0, 60000))
def test_scale_invariance(k, size, alt, x):
    base = HumanEyeConfig(550e-9, 5e-3)
    scaled = HumanEyeConfig(550e-9 * k, 5e-3 * k)
    # theta is the same up to rounding; only test away from the boundary.
    margin = abs(size - min_resolvable_size(angular_resolution(base), alt, x))
    if margin > 1e-9 * size:
        assert eye_detect(base, alt, size, x) == eye_detect(scaled, alt, size, x)


def test_detect_many_matches_scalar(eye):
    x = np.arange(0, 60000)
    for size, alt in [(1, 149), (1, 599), (4, 296), (92, 508), (25, 275)]:
        many = eye.detect_many(alt, size, x)
        scalar = np.array([eye.detect(alt, size, int(v)) for v in x[::97]])
        assert np.array_equal(many[::97], scalar)
        cut = rayleigh_cutoff_m(eye.theta, alt, size)
        hi = min(len(x), math.floor(cut) + 4)
        lo = max(0, hi - 7)
        assert [eye.detect(alt, size, v) for v in range(lo, hi)] == many[lo:hi].tolist()
