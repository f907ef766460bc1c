"""Effective sweep width from detection data, the full sweep, and a
closed-form oracle for the deterministic eye model."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .experiment import (
    DetectionData,
    ExperimentConfig,
    Mode,
    Scenario,
    ScenarioError,
    run_experiment,
)
from .geometry import ModelConstants, m_to_km
from .objects import Catalog
from .sensors import HumanEye, HumanEyeConfig, angular_resolution

# The experiment only covers the right of the track; the curve is mirrored.
SYMMETRY_FACTOR = 2


@dataclass(frozen=True)
class LateralRangeCurve:
    x_m: np.ndarray
    fraction: np.ndarray
    observed: np.ndarray
    detected: np.ndarray
    opportunities: np.ndarray

    def __len__(self):
        return len(self.x_m)

    def points(self) -> list[tuple[int, float]]:
        return list(zip(self.x_m.tolist(), self.fraction.tolist()))


@dataclass(frozen=True)
class SweepWidthResult:
    scenario: Scenario
    w_km: float
    mode: Mode
    seed: int
    rows: int
    coverage_fraction: float

    @property
    def key(self) -> tuple[str, int, float]:
        s = self.scenario
        return s.object.name, s.altitude_m, s.visibility_km


def calculate_w(data: DetectionData) -> float:
    """Sweep width in km: sum of per-column detection fractions (one metre
    each), converted to km and doubled for the mirrored half."""
    if len(data) == 0:
        return 0.0
    total_m = math.fsum(data.fraction.tolist())
    return SYMMETRY_FACTOR * m_to_km(total_m)


def _rayleigh_columns(theta: float, effective_altitude_m: float, size_m: float) -> int:
    """Largest integer lateral range x with size >= theta * slant(x)."""
    reach = size_m / theta
    a = float(effective_altitude_m)
    a2 = a * a
    if reach * reach < a2:
        return 0
    c = math.floor(math.sqrt(reach * reach - a2))

    def ok(x):
        return size_m >= theta * math.sqrt(a2 + float(x) * float(x))

    # Rounding in the square root can land one column either side.
    while c >= 1 and not ok(c):
        c -= 1
    while ok(c + 1):
        c += 1
    return max(c, 0)


def detection_cutoff_m(sensor_cfg: HumanEyeConfig, scenario: Scenario,
                       constants: ModelConstants) -> int:
    """Last detected column, from closed-form geometry (no grid walk)."""
    limits = [constants.sea_length_m, math.floor(scenario.horizon_m)]
    if scenario.visibility_km < constants.unlimited_visibility_km:
        limits.append(math.floor(scenario.visibility_m))
    limits.append(_rayleigh_columns(angular_resolution(sensor_cfg),
                                    scenario.effective_altitude_m,
                                    scenario.object.size_m))
    return max(0, min(limits))


def analytic_w(sensor_cfg: HumanEyeConfig, scenario: Scenario,
               constants: ModelConstants) -> float:
    return SYMMETRY_FACTOR * m_to_km(detection_cutoff_m(sensor_cfg, scenario, constants))


def lrc_of(data: DetectionData, columns: int) -> LateralRangeCurve:
    """Full curve over columns 1..columns; unobserved columns get fraction 0."""
    x = np.arange(1, columns + 1, dtype=np.int64)
    detected = np.zeros(columns, dtype=np.int64)
    opportunities = np.zeros(columns, dtype=np.int64)
    keep = data.x_m <= columns
    idx = data.x_m[keep] - 1
    detected[idx] = data.detected[keep]
    opportunities[idx] = data.opportunities[keep]
    observed = opportunities > 0
    fraction = np.zeros(columns, dtype=np.float64)
    fraction[observed] = detected[observed] / opportunities[observed]
    return LateralRangeCurve(x, fraction, observed, detected, opportunities)


def scenarios(catalog: Catalog, constants: ModelConstants) -> Iterator[Scenario]:
    """Objects outermost, then altitudes, then visibilities."""
    for obj in catalog:
        for alt in constants.altitudes_m:
            for vis in constants.visibilities_km:
                yield Scenario(obj, alt, vis)


def check_scenarios(catalog: Catalog, constants: ModelConstants) -> None:
    for obj in catalog:
        for alt in constants.altitudes_m:
            if alt <= obj.size_m:
                raise ScenarioError(
                    f"altitude {alt} m does not exceed the height of "
                    f"{obj.name!r} ({obj.size_m} m)")


def run_scenario(scenario: Scenario, sensor_cfg: HumanEyeConfig,
                 exp_cfg: ExperimentConfig, constants: ModelConstants,
                 stream: int | None = None) -> tuple[SweepWidthResult, DetectionData]:
    data = run_experiment(HumanEye(sensor_cfg), scenario, exp_cfg, stream=stream,
                          unlimited_visibility_km=constants.unlimited_visibility_km)
    rows = exp_cfg.rows if exp_cfg.mode is Mode.MONTE_CARLO else exp_cfg.columns
    result = SweepWidthResult(
        scenario=scenario,
        w_km=calculate_w(data),
        mode=exp_cfg.mode,
        seed=exp_cfg.seed,
        rows=rows,
        coverage_fraction=len(data) / exp_cfg.columns,
    )
    return result, data


def sweep_all(catalog: Catalog, constants: ModelConstants, sensor_cfg: HumanEyeConfig,
              exp_cfg: ExperimentConfig, workers: int = 1) -> list[SweepWidthResult]:
    """W for every (object, altitude, visibility) combination.

    Scenario ``i`` in iteration order draws from stream ``i`` of the master
    seed, so ``workers > 1`` gives the same results as a serial run.
    """
    if exp_cfg.columns != constants.sea_length_m:
        raise ValueError(
            f"experiment has {exp_cfg.columns} columns but sea length is "
            f"{constants.sea_length_m} m")
    check_scenarios(catalog, constants)
    todo = list(enumerate(scenarios(catalog, constants)))

    def one(item):
        i, sc = item
        return run_scenario(sc, sensor_cfg, exp_cfg, constants, stream=i)[0]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, todo))
    return [one(item) for item in todo]


def scenario_stream(catalog: Catalog, constants: ModelConstants,
                    scenario: Scenario) -> int | None:
    """Stream index the full sweep would give ``scenario``, if it is in the grid."""
    for i, sc in enumerate(scenarios(catalog, constants)):
        if sc == scenario:
            return i
    return None
