"""Human-eye detection from the Rayleigh resolution limit.

An object is detectable when it is at least as large as the smallest
feature the pupil can resolve at the slant distance to the object.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

from .geometry import slant_range

RAYLEIGH_FACTOR = 1.22

DEFAULT_WAVELENGTH_M = 550e-9
DEFAULT_PUPIL_DIAMETER_M = 5e-3


class ConfigError(ValueError):
    pass


@runtime_checkable
class Sensor(Protocol):
    def detect(self, effective_altitude_m: float, object_size_m: float,
               lateral_m: float) -> bool: ...


@dataclass(frozen=True)
class HumanEyeConfig:
    wavelength_m: float = DEFAULT_WAVELENGTH_M
    pupil_diameter_m: float = DEFAULT_PUPIL_DIAMETER_M

    def __post_init__(self):
        if not (self.wavelength_m > 0 and math.isfinite(self.wavelength_m)):
            raise ConfigError(f"wavelength must be positive, got {self.wavelength_m!r}")
        if not (self.pupil_diameter_m > 0 and math.isfinite(self.pupil_diameter_m)):
            raise ConfigError(
                f"pupil diameter must be positive, got {self.pupil_diameter_m!r}")

    @classmethod
    def from_cli_units(cls, lambda_nm: float, pupil_mm: float) -> "HumanEyeConfig":
        return cls(wavelength_m=lambda_nm * 1e-9, pupil_diameter_m=pupil_mm * 1e-3)


def angular_resolution(cfg: HumanEyeConfig) -> float:
    """Diffraction-limited angular resolution in radians, 1.22 * lambda / D."""
    return RAYLEIGH_FACTOR * cfg.wavelength_m / cfg.pupil_diameter_m


def min_resolvable_size(theta: float, effective_altitude_m: float,
                        lateral_m: float) -> float:
    if not theta > 0:
        raise ValueError(f"angular resolution must be positive, got {theta!r}")
    return theta * slant_range(effective_altitude_m, lateral_m)


def eye_detect(cfg: HumanEyeConfig, effective_altitude_m: float,
               object_size_m: float, lateral_m: float) -> bool:
    if not object_size_m > 0:
        raise ValueError(f"object size must be positive, got {object_size_m!r}")
    theta = angular_resolution(cfg)
    return object_size_m >= min_resolvable_size(theta, effective_altitude_m, lateral_m)


def rayleigh_cutoff_m(theta: float, effective_altitude_m: float,
                      object_size_m: float) -> float:
    """Largest lateral range at which the object is still resolvable.

    Zero when the object is too small to resolve even directly below.
    """
    reach = object_size_m / theta
    return math.sqrt(max(0.0, reach * reach - effective_altitude_m * effective_altitude_m))


class HumanEye:
    """Stateless human-eye sensor.

    ``detect_many`` evaluates a whole array of lateral ranges with the same
    arithmetic as ``detect``, so both give identical verdicts.
    """

    def __init__(self, cfg: HumanEyeConfig | None = None):
        self.cfg = cfg if cfg is not None else HumanEyeConfig()
        self.theta = angular_resolution(self.cfg)

    def __repr__(self):
        return f"HumanEye({self.cfg!r})"

    def detect(self, effective_altitude_m: float, object_size_m: float,
               lateral_m: float) -> bool:
        return eye_detect(self.cfg, effective_altitude_m, object_size_m, lateral_m)

    def detect_many(self, effective_altitude_m: float, object_size_m: float,
                    lateral_m: np.ndarray) -> np.ndarray:
        a = float(effective_altitude_m)
        x = np.asarray(lateral_m, dtype=np.float64)
        return object_size_m >= self.theta * np.sqrt(a * a + x * x)
