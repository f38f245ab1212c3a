"""
Receiver distance sweeps, the built-in presets and fast fading metrics.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import channel, optimize
from .channel import Scenario
from .exceptions import ConfigError, DomainError
from .geometry import GeometryConfig
from .optimize import OptimizationResult, StrategyParams
from .patterns import AntennaSpec, PatternModel
from ..types import Spacing, StrategyId
from ..utils.units import DBM_FLOOR, dbm_to_watts

logger = logging.getLogger(__name__)

DEFAULT_STRATEGIES = (
    StrategyId.RIS0,
    StrategyId.RIS1,
    StrategyId.RIS2_ANALYTIC,
    StrategyId.RIS3_RANDOM,
    StrategyId.RIS4,
)
DEFAULT_SEED = 42
SWEEP_POINTS = 200
# 35 GHz is assumed for the simulation presets: the 3.8 mm cells match that hardware
FREQUENCY_35GHZ = 35e9


@dataclass(frozen=True)
class SweepRange:
    """Receiver distances of a sweep, in meters.

    Either an explicit list (`values`), or `start`/`stop` with exactly one of `step`
    (linear) or `points` (`spacing` linear or log).
    """

    values: Optional[Tuple[float, ...]] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    step: Optional[float] = None
    points: Optional[int] = None
    spacing: Spacing = Spacing.LINEAR

    def __post_init__(self):
        if self.values is not None:
            if any(v is not None for v in (self.start, self.stop, self.step, self.points)):
                raise ConfigError("an explicit distance list excludes a range")
            object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        else:
            if self.start is None or self.stop is None:
                raise ConfigError("a range needs both start and stop")
            if (self.step is None) == (self.points is None):
                raise ConfigError("a range needs exactly one of step or points")
            if self.step is not None and self.spacing is not Spacing.LINEAR:
                raise ConfigError("log spacing needs points, not step", path="spacing")
            if self.step is not None and not self.step > 0:
                raise ConfigError(f"must be positive, got {self.step!r}", path="step")
            if self.points is not None and self.points < 1:
                raise ConfigError(f"must be >= 1, got {self.points!r}", path="points")
            if not (self.start > 0 and self.stop >= self.start):
                raise ConfigError(
                    f"needs 0 < start <= stop, got {self.start!r}..{self.stop!r}", path="start"
                )
        d = self.distances()
        if not d:
            raise ConfigError("no distances")
        if not all(math.isfinite(v) and v > 0 for v in d):
            raise ConfigError("distances must be positive")
        if any(b <= a for a, b in zip(d, d[1:])):
            raise ConfigError("distances must be strictly increasing")

    @classmethod
    def explicit(cls, values: Sequence[float]) -> "SweepRange":
        return cls(values=tuple(values))

    @classmethod
    def stepped(cls, start: float, stop: float, step: float) -> "SweepRange":
        return cls(start=start, stop=stop, step=step)

    @classmethod
    def spaced(cls, start: float, stop: float, points: int, spacing: Spacing = Spacing.LINEAR):
        return cls(start=start, stop=stop, points=points, spacing=spacing)

    def distances(self) -> Tuple[float, ...]:
        if self.values is not None:
            return self.values
        if self.step is not None:
            count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
            d = np.round(self.start + self.step * np.arange(count), 12)
        elif self.points == 1:
            d = np.array([self.start])
        elif self.spacing is Spacing.LOG:
            d = np.geomspace(self.start, self.stop, self.points)
        else:
            d = np.linspace(self.start, self.stop, self.points)
        return tuple(float(v) for v in d)


@dataclass(frozen=True)
class SweepSpec:
    """A sweep over the receiver distance.

    `scenario` is the template; its `geometry.d2` is replaced by each swept distance.
    """

    scenario: Scenario
    distances: SweepRange
    strategies: Tuple[StrategyId, ...] = DEFAULT_STRATEGIES
    seed: int = DEFAULT_SEED
    params: StrategyParams = StrategyParams()
    name: str = "sweep"

    def __post_init__(self):
        object.__setattr__(self, "strategies", tuple(self.strategies))
        if not self.strategies:
            raise ConfigError("at least one strategy is required", path="strategies")
        if len(set(self.strategies)) != len(self.strategies):
            raise ConfigError("strategies must not repeat", path="strategies")


@dataclass(frozen=True)
class StrategyOutcome:
    dbm: float
    watts: float
    evaluations: int
    phase: Optional[float] = None
    seed: Optional[int] = None


@dataclass(frozen=True)
class SweepRow:
    d2: float
    outcomes: Dict[StrategyId, StrategyOutcome]


@dataclass(frozen=True)
class SweepResult:
    name: str
    strategies: Tuple[StrategyId, ...]
    rows: Tuple[SweepRow, ...]

    def __len__(self):
        return len(self.rows)

    @property
    def distances(self) -> List[float]:
        return [row.d2 for row in self.rows]

    def series(self, strategy: StrategyId) -> List[Tuple[float, float]]:
        """(d2, reported dBm) pairs of one strategy."""
        return [(row.d2, row.outcomes[strategy].dbm) for row in self.rows]

    def watts(self, strategy: StrategyId) -> List[float]:
        return [row.outcomes[strategy].watts for row in self.rows]


@dataclass(frozen=True)
class FadingMetrics:
    local_minima_count: int
    local_maxima_count: int
    max_peak_to_trough_db: float
    monotone_fraction: float


def child_seed(seed: int, d2: float) -> int:
    """Seed of the random search at one distance. Keyed on the distance value, so the
    same distance gets the same stream in any sweep that contains it.
    """
    key = int(round(d2 * 1e9))
    return int(np.random.SeedSequence(seed, spawn_key=(key,)).generate_state(1)[0])


def _run_point(spec: SweepSpec, d2: float) -> SweepRow:
    scenario = spec.scenario.with_distance(d2)
    seed = child_seed(spec.seed, d2)
    outcomes = {}
    for strategy in spec.strategies:
        result: OptimizationResult = optimize.run_strategy(
            strategy, scenario, spec.params, seed=seed
        )
        outcomes[strategy] = StrategyOutcome(
            dbm=channel.report(scenario, result.power),
            watts=result.power,
            evaluations=result.evaluations,
            phase=result.phase,
            seed=result.seed,
        )
    return SweepRow(d2=d2, outcomes=outcomes)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Runs every strategy of `spec` at every distance.

    With `workers > 1` distances are evaluated on a thread pool; rows are always
    returned in distance order and do not depend on the number of workers.
    """
    distances = spec.distances.distances()
    logger.info(
        "sweep %s: %d distances x %d strategies",
        spec.name,
        len(distances),
        len(spec.strategies),
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda d2: _run_point(spec, d2), distances))
    else:
        rows = [_run_point(spec, d2) for d2 in distances]
    logger.info("sweep %s done", spec.name)
    return SweepResult(name=spec.name, strategies=spec.strategies, rows=tuple(rows))


def _fig3_scenario(theta_t_deg: float) -> Scenario:
    return Scenario(
        geometry=GeometryConfig(
            rows=64,
            cols=64,
            cell_dx=3.8e-3,
            cell_dy=3.8e-3,
            d1=1.0,
            d2=1.0,
            theta_t=math.radians(theta_t_deg),
            theta_r=math.radians(45.0),
            frequency=FREQUENCY_35GHZ,
        ),
        tx_antenna=AntennaSpec(1.0, 1.0, PatternModel.isotropic()),
        rx_antenna=AntennaSpec(1.0, 1.0, PatternModel.isotropic()),
        cell_pattern=PatternModel.cosine_power(1.0),
        p_t=dbm_to_watts(0.0),
        reflection_amplitude=0.8,
    )


def preset_fig3a() -> SweepSpec:
    """64x64 RIS, specular geometry (theta_t = theta_r = 45 deg), d2 from 1 to 100 m."""
    return SweepSpec(
        scenario=_fig3_scenario(45.0),
        distances=SweepRange.spaced(1.0, 100.0, SWEEP_POINTS, Spacing.LOG),
        name="fig3a",
    )


def preset_fig3b() -> SweepSpec:
    """As fig3a with the transmitter moved to theta_t = 30 deg."""
    return SweepSpec(
        scenario=_fig3_scenario(30.0),
        distances=SweepRange.spaced(1.0, 100.0, SWEEP_POINTS, Spacing.LOG),
        name="fig3b",
    )


def preset_fig5(calibration_offset_db: float = 0.0) -> SweepSpec:
    """Measurement setup: 30x30 1-bit RIS at 35 GHz with horn antennas,
    d2 from 0.6 to 3.0 m every 0.2 m.
    """
    horn = PatternModel.cosine_power(161.0, clamp=True)
    return SweepSpec(
        scenario=Scenario(
            geometry=GeometryConfig(
                rows=30,
                cols=30,
                cell_dx=3.8e-3,
                cell_dy=3.8e-3,
                d1=1.0,
                d2=0.6,
                theta_t=math.radians(45.0),
                theta_r=math.radians(45.0),
                frequency=FREQUENCY_35GHZ,
            ),
            tx_antenna=AntennaSpec(323.6, 128.8, horn),
            rx_antenna=AntennaSpec(323.6, 128.8, horn),
            cell_pattern=PatternModel.cosine_power(1.0),
            p_t=dbm_to_watts(15.0),
            reflection_amplitude=0.8,
            calibration_offset_db=calibration_offset_db,
        ),
        distances=SweepRange.stepped(0.6, 3.0, 0.2),
        strategies=(StrategyId.RIS0, StrategyId.RIS1),
        name="fig5",
    )


PRESETS = {
    "fig3a": preset_fig3a,
    "fig3b": preset_fig3b,
    "fig5": preset_fig5,
}


def preset(name: str) -> SweepSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ConfigError(
            f"unknown preset '{name}', expected one of: {', '.join(PRESETS)}", path="preset"
        ) from None


def fading_metrics(series: Sequence[Tuple[float, float]]) -> FadingMetrics:
    """Fluctuation statistics of a (d2, dBm) series.

    A local minimum/maximum is an interior point strictly below/above both neighbours.
    The peak-to-trough value is the largest dB difference between consecutive extrema.
    """
    if len(series) < 3:
        raise DomainError(f"fading metrics need at least 3 points, got {len(series)}")
    values = [max(float(v), DBM_FLOOR) for _, v in series]
    extrema = []
    minima = maxima = 0
    for prev, cur, nxt in zip(values, values[1:], values[2:]):
        if cur < prev and cur < nxt:
            minima += 1
            extrema.append(cur)
        elif cur > prev and cur > nxt:
            maxima += 1
            extrema.append(cur)
    peak_to_trough = max((abs(b - a) for a, b in zip(extrema, extrema[1:])), default=0.0)
    decreasing = sum(1 for a, b in zip(values, values[1:]) if b < a)
    return FadingMetrics(
        local_minima_count=minima,
        local_maxima_count=maxima,
        max_peak_to_trough_db=peak_to_trough,
        monotone_fraction=decreasing / (len(values) - 1),
    )
