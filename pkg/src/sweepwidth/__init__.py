"""Effective sweep width of a visual sensor searching at sea from a helicopter."""

__version__ = "0.1.0"

from .compare import ComparisonReport, compare_tables
from .experiment import (
    DetectionData,
    ExperimentConfig,
    Mode,
    Scenario,
    ScenarioError,
    gated_detect,
    place_objects,
    run_experiment,
)
from .geometry import (
    ModelConstants,
    distance_to_horizon_km,
    km_to_m,
    m_to_km,
    slant_range,
)
from .objects import Catalog, ParseError, SearchObject, default_catalog, load_catalog
from .sensors import (
    ConfigError,
    HumanEye,
    HumanEyeConfig,
    Sensor,
    angular_resolution,
    eye_detect,
    min_resolvable_size,
)
from .sweep import (
    LateralRangeCurve,
    SweepWidthResult,
    analytic_w,
    calculate_w,
    lrc_of,
    sweep_all,
)
from .tables import load_reference_table, read_results
