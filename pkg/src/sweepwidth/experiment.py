"""Lateral range experiment on a one-metre sea grid.

The sensor flies up column zero. Column ``i`` (1-based) lies ``i`` metres
to the side of the track. Each row holds one object; the sensor gets one
detection opportunity per row.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .geometry import (
    DEFAULT_SEA_LENGTH_M,
    UNLIMITED_VISIBILITY_KM,
    distance_to_horizon_km,
    km_to_m,
)
from .objects import SearchObject
from .sensors import Sensor

RNG_ALGORITHM = "PCG64"
DEFAULT_ROWS = 600_000
DEFAULT_SEED = 42


class ScenarioError(ValueError):
    pass


class Mode(str, enum.Enum):
    MONTE_CARLO = "mc"
    EXHAUSTIVE = "exhaustive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ExperimentConfig:
    rows: int = DEFAULT_ROWS
    columns: int = DEFAULT_SEA_LENGTH_M
    seed: int = DEFAULT_SEED
    mode: Mode = Mode.EXHAUSTIVE

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if int(self.rows) != self.rows or self.rows < 1:
            raise ValueError(f"rows must be a positive integer, got {self.rows!r}")
        if int(self.columns) != self.columns or self.columns < 1:
            raise ValueError(f"columns must be a positive integer, got {self.columns!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed!r}")


@dataclass(frozen=True)
class Scenario:
    object: SearchObject
    altitude_m: int
    visibility_km: float
    horizon_km: float = field(init=False)

    def __post_init__(self):
        if not self.visibility_km > 0:
            raise ScenarioError(f"visibility must be positive, got {self.visibility_km!r}")
        if not self.altitude_m > self.object.size_m:
            raise ScenarioError(
                f"altitude {self.altitude_m} m does not exceed the height of "
                f"{self.object.name!r} ({self.object.size_m} m)")
        object.__setattr__(self, "horizon_km", distance_to_horizon_km(self.altitude_m))

    @property
    def effective_altitude_m(self) -> int:
        """Height of the eye above the top of the object."""
        return self.altitude_m - self.object.size_m

    @property
    def horizon_m(self) -> float:
        return km_to_m(self.horizon_km)

    @property
    def visibility_m(self) -> float:
        return km_to_m(self.visibility_km)


@dataclass(frozen=True, eq=False)
class DetectionData:
    """Per-column detection counts, keyed by lateral range in metres.

    Stored column-wise as sorted numpy arrays; behaves like a read-only
    mapping ``x_m -> (detected, opportunities, fraction)``.
    """

    x_m: np.ndarray
    detected: np.ndarray
    opportunities: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x_m, dtype=np.int64)
        d = np.asarray(self.detected, dtype=np.int64)
        n = np.asarray(self.opportunities, dtype=np.int64)
        if not (x.ndim == d.ndim == n.ndim == 1 and len(x) == len(d) == len(n)):
            raise ValueError("x_m, detected and opportunities must be equal-length 1-D")
        if len(x) and (x[0] < 1 or np.any(np.diff(x) <= 0)):
            raise ValueError("column keys must be positive and strictly increasing")
        if np.any(n < 1) or np.any(d < 0) or np.any(d > n):
            raise ValueError("need 0 <= detected <= opportunities and opportunities >= 1")
        for name, arr in (("x_m", x), ("detected", d), ("opportunities", n)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_mapping(cls, data: Mapping[int, tuple]) -> "DetectionData":
        keys = sorted(data)
        return cls(
            np.array(keys, dtype=np.int64),
            np.array([data[k][0] for k in keys], dtype=np.int64),
            np.array([data[k][1] for k in keys], dtype=np.int64),
        )

    @property
    def fraction(self) -> np.ndarray:
        return self.detected / self.opportunities

    @property
    def total_opportunities(self) -> int:
        return int(self.opportunities.sum())

    def __len__(self):
        return len(self.x_m)

    def __iter__(self):
        return iter(int(x) for x in self.x_m)

    def __contains__(self, x):
        i = np.searchsorted(self.x_m, x)
        return i < len(self.x_m) and self.x_m[i] == x

    def __getitem__(self, x) -> tuple[int, int, float]:
        i = np.searchsorted(self.x_m, x)
        if i >= len(self.x_m) or self.x_m[i] != x:
            raise KeyError(x)
        d, n = int(self.detected[i]), int(self.opportunities[i])
        return d, n, d / n

    def items(self):
        for x, d, n in zip(self.x_m.tolist(), self.detected.tolist(),
                           self.opportunities.tolist()):
            yield x, (d, n, d / n)

    def __eq__(self, other):
        if not isinstance(other, DetectionData):
            return NotImplemented
        return (np.array_equal(self.x_m, other.x_m)
                and np.array_equal(self.detected, other.detected)
                and np.array_equal(self.opportunities, other.opportunities))

    __hash__ = None


def rng_for(seed: int, stream: int | None = None) -> np.random.Generator:
    """Generator for one scenario; ``stream`` is mixed into the seed so
    scenarios draw independent, schedule-free sequences."""
    key = () if stream is None else (int(stream),)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def place_objects(cfg: ExperimentConfig,
                  rng: np.random.Generator | None = None) -> np.ndarray:
    """One uniformly random column in ``[1, columns]`` per row."""
    if cfg.mode is not Mode.MONTE_CARLO:
        raise ValueError("random placement only applies to Monte Carlo mode")
    if rng is None:
        rng = rng_for(cfg.seed)
    return rng.integers(1, cfg.columns, size=cfg.rows, endpoint=True, dtype=np.int64)


def gated_detect(sensor: Sensor, scenario: Scenario, lateral_m: int,
                 unlimited_visibility_km: float = UNLIMITED_VISIBILITY_KM) -> bool:
    """Sensor verdict after the horizon and visibility gates."""
    if lateral_m > scenario.horizon_m:
        return False
    if scenario.visibility_km < unlimited_visibility_km and lateral_m > scenario.visibility_m:
        return False
    return bool(sensor.detect(scenario.effective_altitude_m, scenario.object.size_m, lateral_m))


def gated_detect_many(sensor: Sensor, scenario: Scenario, lateral_m: np.ndarray,
                      unlimited_visibility_km: float = UNLIMITED_VISIBILITY_KM) -> np.ndarray:
    x = np.asarray(lateral_m)
    inside = x <= scenario.horizon_m
    if scenario.visibility_km < unlimited_visibility_km:
        inside &= x <= scenario.visibility_m
    out = np.zeros(x.shape, dtype=bool)
    if not inside.any():
        return out
    alt, size = scenario.effective_altitude_m, scenario.object.size_m
    detect_many = getattr(sensor, "detect_many", None)
    if detect_many is not None:
        out[inside] = detect_many(alt, size, x[inside])
    else:
        out[inside] = [sensor.detect(alt, size, int(v)) for v in x[inside]]
    return out


def run_experiment(sensor: Sensor, scenario: Scenario, cfg: ExperimentConfig,
                   stream: int | None = None,
                   unlimited_visibility_km: float = UNLIMITED_VISIBILITY_KM) -> DetectionData:
    if cfg.mode is Mode.EXHAUSTIVE:
        x = np.arange(1, cfg.columns + 1, dtype=np.int64)
        hit = gated_detect_many(sensor, scenario, x, unlimited_visibility_km)
        ones = np.ones_like(x)
        return DetectionData(x, hit.astype(np.int64), ones)

    placed = place_objects(cfg, rng_for(cfg.seed, stream))
    hit = gated_detect_many(sensor, scenario, placed, unlimited_visibility_km)
    opportunities = np.bincount(placed, minlength=cfg.columns + 1)
    detected = np.bincount(placed[hit], minlength=cfg.columns + 1)
    keys = np.flatnonzero(opportunities)
    return DetectionData(keys, detected[keys], opportunities[keys])
