from .core.geometry import GeometryConfig, CellIndex, Point3
from .core.patterns import PatternModel, AntennaSpec
from .core.channel import PhaseConfiguration, Scenario, received_power
from .core.optimize import StrategyParams, run_strategy, upper_bound_power
from .core.experiment import SweepRange, SweepSpec, SweepResult, run_sweep, fading_metrics
from .core.exceptions import (
    ConfigError,
    DegenerateGeometryError,
    CellIndexError,
    DomainError,
    CapacityError,
    DimensionError,
)
from .config.runconfig import RunConfig, parse_config
from .types import StrategyId

__all__ = [
    "GeometryConfig",
    "CellIndex",
    "Point3",
    "PatternModel",
    "AntennaSpec",
    "PhaseConfiguration",
    "Scenario",
    "received_power",
    "StrategyParams",
    "run_strategy",
    "upper_bound_power",
    "SweepRange",
    "SweepSpec",
    "SweepResult",
    "run_sweep",
    "fading_metrics",
    "ConfigError",
    "DegenerateGeometryError",
    "CellIndexError",
    "DomainError",
    "CapacityError",
    "DimensionError",
    "RunConfig",
    "parse_config",
    "StrategyId",
]
