import dataclasses
import math
from typing import List
from dataclasses import dataclass, field

from ..core.channel import Scenario
from ..core.dataclasses_dict import DataclassDictMixIn
from ..core.exceptions import ConfigError
from ..core.experiment import SweepRange
from ..core.geometry import GeometryConfig
from ..core.optimize import DEFAULT_ITERATIONS, DEFAULT_MAX_SWEEPS, StrategyParams
from ..core.patterns import AntennaSpec, PatternModel
from ..types import OutputFormat, Spacing, StrategyId
from ..utils.units import dbm_to_watts

DEFAULT_FREQUENCY = 35e9


def _positive(obj, *names):
    for name in names:
        value = getattr(obj, name)
        if not (math.isfinite(value) and value > 0):
            raise ConfigError(f"must be positive, got {value!r}", path=name)


def _at_least_one(obj, *names):
    for name in names:
        value = getattr(obj, name)
        if value < 1:
            raise ConfigError(f"must be >= 1, got {value!r}", path=name)


@dataclass
class Geometry(DataclassDictMixIn):
    """RIS grid and terminal placement. Distances in meters, angles in degrees from the
    RIS normal.
    """

    rows: int
    cols: int
    dx_m: float
    dy_m: float
    d1_m: float
    theta_t_deg: float
    theta_r_deg: float
    frequency_hz: float = DEFAULT_FREQUENCY

    def __post_init__(self):
        _at_least_one(self, "rows", "cols")
        _positive(self, "dx_m", "dy_m", "d1_m", "frequency_hz")
        for name in ("theta_t_deg", "theta_r_deg"):
            value = getattr(self, name)
            if not 0 <= value < 90:
                raise ConfigError(f"must be in [0, 90) degrees, got {value!r}", path=name)

    def to_geometry(self, d2: float) -> GeometryConfig:
        return GeometryConfig(
            rows=self.rows,
            cols=self.cols,
            cell_dx=self.dx_m,
            cell_dy=self.dy_m,
            d1=self.d1_m,
            d2=d2,
            theta_t=math.radians(self.theta_t_deg),
            theta_r=math.radians(self.theta_r_deg),
            frequency=self.frequency_hz,
        )


@dataclass
class Antenna(DataclassDictMixIn):
    gain_ris_path: float = 1.0
    gain_direct_path: float = 1.0
    pattern: PatternModel = PatternModel.isotropic()

    def __post_init__(self):
        _positive(self, "gain_ris_path", "gain_direct_path")

    def to_spec(self) -> AntennaSpec:
        return AntennaSpec(self.gain_ris_path, self.gain_direct_path, self.pattern)


@dataclass
class Antennas(DataclassDictMixIn):
    tx: Antenna = field(default_factory=Antenna)
    rx: Antenna = field(default_factory=Antenna)
    cell_pattern: PatternModel = PatternModel.cosine_power(1.0)


@dataclass
class Link(DataclassDictMixIn):
    p_t_dbm: float = 0.0
    reflection_amplitude: float = 0.8
    calibration_offset_db: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.p_t_dbm):
            raise ConfigError(f"must be finite, got {self.p_t_dbm!r}", path="p_t_dbm")
        if not 0 <= self.reflection_amplitude <= 1:
            raise ConfigError(
                f"must be in [0, 1], got {self.reflection_amplitude!r}",
                path="reflection_amplitude",
            )
        if not math.isfinite(self.calibration_offset_db):
            raise ConfigError(
                f"must be finite, got {self.calibration_offset_db!r}",
                path="calibration_offset_db",
            )


# SweepRange field -> document key
_SWEEP_KEYS = {"values": "d2_m", "start": "start_m", "stop": "stop_m", "step": "step_m"}


@dataclass
class Sweep(DataclassDictMixIn):
    """Receiver distances: either the explicit list `d2_m`, or `start_m`/`stop_m` with
    exactly one of `step_m` or `points`.
    """

    d2_m: List[float] = None
    start_m: float = None
    stop_m: float = None
    step_m: float = None
    points: int = None
    spacing: Spacing = Spacing.LINEAR

    def __post_init__(self):
        self.to_range()

    def to_range(self) -> SweepRange:
        try:
            return SweepRange(
                values=tuple(self.d2_m) if self.d2_m is not None else None,
                start=self.start_m,
                stop=self.stop_m,
                step=self.step_m,
                points=self.points,
                spacing=self.spacing,
            )
        except ConfigError as e:
            raise ConfigError(e.message, path=_SWEEP_KEYS.get(e.path, e.path)) from None


@dataclass
class Strategies(DataclassDictMixIn):
    """Strategy selection and parameters. Without `names` a preset keeps its own list
    and an explicit document runs the default set.
    """

    names: List[StrategyId] = None
    iterations: int = DEFAULT_ITERATIONS
    grid_step_deg: float = 1.0
    max_sweeps: int = DEFAULT_MAX_SWEEPS
    vote: bool = False

    def __post_init__(self):
        if self.names is not None:
            if not self.names:
                raise ConfigError("at least one strategy is required", path="names")
            if len(set(self.names)) != len(self.names):
                raise ConfigError("strategies must not repeat", path="names")
        _at_least_one(self, "iterations", "max_sweeps")
        if not 0 < self.grid_step_deg <= 180:
            raise ConfigError(
                f"must be in (0, 180] degrees, got {self.grid_step_deg!r}", path="grid_step_deg"
            )

    def to_params(self) -> StrategyParams:
        return StrategyParams(
            iterations=self.iterations,
            grid_step=math.radians(self.grid_step_deg),
            max_sweeps=self.max_sweeps,
            vote=self.vote,
        )


@dataclass
class Output(DataclassDictMixIn):
    path: str = "results"
    formats: List[OutputFormat] = field(default_factory=lambda: [OutputFormat.CSV])

    def __post_init__(self):
        if not self.formats:
            raise ConfigError("at least one output format is required", path="formats")
        if len(set(self.formats)) != len(self.formats):
            raise ConfigError("output formats must not repeat", path="formats")


def build_scenario(
    geometry: Geometry, antennas: Antennas, link: Link, d2: float
) -> Scenario:
    """Scenario described by the explicit document sections, with the receiver at `d2`."""
    return Scenario(
        geometry=geometry.to_geometry(d2),
        tx_antenna=antennas.tx.to_spec(),
        rx_antenna=antennas.rx.to_spec(),
        cell_pattern=antennas.cell_pattern,
        p_t=dbm_to_watts(link.p_t_dbm),
        reflection_amplitude=link.reflection_amplitude,
        calibration_offset_db=link.calibration_offset_db,
    )


def only_calibration(link: Link) -> bool:
    """True when `link` sets nothing but the calibration offset."""
    return dataclasses.replace(link, calibration_offset_db=Link().calibration_offset_db) == Link()
