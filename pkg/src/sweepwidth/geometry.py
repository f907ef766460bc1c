"""Units, horizon distance and slant-range geometry.

Everything inside the package works in metres; kilometres only appear at
the input/output boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

M_PER_KM = 1000

# Coefficient of the sea-level horizon approximation, km per sqrt(metre).
HORIZON_COEFF = 3.83

DEFAULT_ALTITUDES_M = (150, 300, 600)
DEFAULT_VISIBILITIES_KM = (1.9, 5.6, 9.3, 18.5, 27.8, 37.0)
DEFAULT_SEA_LENGTH_M = 54200
UNLIMITED_VISIBILITY_KM = 37.0


def km_to_m(d: float) -> float:
    return d * M_PER_KM


def m_to_km(d: float) -> float:
    return d / M_PER_KM


def distance_to_horizon_km(altitude_m: float) -> float:
    """Distance to the sea horizon seen from ``altitude_m`` metres, in km."""
    if not altitude_m > 0:
        raise ValueError(f"altitude must be positive, got {altitude_m!r}")
    return HORIZON_COEFF * math.sqrt(altitude_m)


def slant_range(effective_altitude_m: float, lateral_m: float) -> float:
    """Straight-line eye-to-object distance.

    Written as ``sqrt(a*a + x*x)`` rather than ``math.hypot`` so the scalar
    and the numpy paths round identically.
    """
    if not (effective_altitude_m >= 0 and lateral_m >= 0):
        raise ValueError("slant range needs non-negative finite inputs")
    if not (math.isfinite(effective_altitude_m) and math.isfinite(lateral_m)):
        raise ValueError("slant range needs non-negative finite inputs")
    a, x = float(effective_altitude_m), float(lateral_m)
    return math.sqrt(a * a + x * x)


def _strictly_increasing(seq) -> bool:
    return all(a < b for a, b in zip(seq, seq[1:]))


@dataclass(frozen=True)
class ModelConstants:
    altitudes_m: tuple[int, ...] = DEFAULT_ALTITUDES_M
    visibilities_km: tuple[float, ...] = DEFAULT_VISIBILITIES_KM
    sea_length_m: int = DEFAULT_SEA_LENGTH_M
    unlimited_visibility_km: float = UNLIMITED_VISIBILITY_KM

    def __post_init__(self):
        object.__setattr__(self, "altitudes_m", tuple(int(a) for a in self.altitudes_m))
        object.__setattr__(
            self, "visibilities_km", tuple(float(v) for v in self.visibilities_km)
        )
        if not self.altitudes_m or min(self.altitudes_m) < 1:
            raise ValueError("altitudes must be positive integers")
        if not self.visibilities_km or min(self.visibilities_km) <= 0:
            raise ValueError("visibilities must be positive")
        if not _strictly_increasing(self.altitudes_m):
            raise ValueError("altitudes must be strictly increasing")
        if not _strictly_increasing(self.visibilities_km):
            raise ValueError("visibilities must be strictly increasing")
        if int(self.sea_length_m) != self.sea_length_m or self.sea_length_m < 1:
            raise ValueError("sea length must be a positive integer number of metres")
        if not self.unlimited_visibility_km > 0:
            raise ValueError("unlimited visibility threshold must be positive")

    @property
    def max_w_km(self) -> float:
        return 2 * m_to_km(self.sea_length_m)
