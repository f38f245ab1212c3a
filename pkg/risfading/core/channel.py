"""
Received power of the two-path (direct + RIS-assisted) free-space model.

The RIS path is the coherent sum of one sub-path per unit cell; the direct path follows
the Friis law. Both phasors carry the propagation phase exp(-j 2 pi r / lambda).
"""

import dataclasses
import functools
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from . import geometry as geo
from .exceptions import ConfigError, DimensionError
from .patterns import AntennaSpec, PatternModel, combined_pattern
from ..utils.units import reported_dbm

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi


class PhaseConfiguration:
    """Per-cell reflection coefficients Gamma = A exp(j phi), stored as read-only
    `(rows, cols)` amplitude and phase tables. Phases are reduced to [0, 2 pi).
    """

    __slots__ = ("amplitude", "phase")

    def __init__(self, amplitude, phase):
        amplitude = np.array(amplitude, dtype=float, ndmin=2)
        phase = np.array(phase, dtype=float, ndmin=2)
        if amplitude.shape != phase.shape or amplitude.ndim != 2:
            raise DimensionError(
                f"amplitude table {amplitude.shape} and phase table {phase.shape} differ"
            )
        if not np.all((amplitude >= 0) & (amplitude <= 1)):
            raise ConfigError("reflection amplitudes must be in [0, 1]", path="amplitude")
        if not np.all(np.isfinite(phase)):
            raise ConfigError("reflection phases must be finite", path="phase")
        phase = np.mod(phase, TWO_PI)
        # mod can round a tiny negative value up to exactly 2 pi
        phase[phase >= TWO_PI] = 0.0
        amplitude.setflags(write=False)
        phase.setflags(write=False)
        self.amplitude = amplitude
        self.phase = phase

    @classmethod
    def uniform(cls, rows: int, cols: int, amplitude: float, phase: float = 0.0):
        return cls(np.full((rows, cols), amplitude), np.full((rows, cols), phase))

    @classmethod
    def binary(cls, bits, amplitude: float):
        """Configuration from a table of 0/1 states, state 1 meaning a phase of pi."""
        bits = np.asarray(bits)
        return cls(np.full(bits.shape, amplitude), np.where(bits != 0, math.pi, 0.0))

    @property
    def shape(self):
        return self.amplitude.shape

    @property
    def gamma(self) -> np.ndarray:
        return self.amplitude * np.exp(1j * self.phase)

    def __eq__(self, other):
        if not isinstance(other, PhaseConfiguration):
            return NotImplemented
        return np.array_equal(self.amplitude, other.amplitude) and np.array_equal(
            self.phase, other.phase
        )

    def __repr__(self):
        return f"PhaseConfiguration(shape={self.shape})"


@dataclass(frozen=True)
class Scenario:
    """Everything needed for one received power evaluation.

    **Parameters**

    * **geometry**: RIS grid and terminal placement.
    * **tx_antenna**, **rx_antenna**: Terminal antennas.
    * **cell_pattern**: Power pattern of a unit cell.
    * **p_t**: Transmit power in watts.
    * **reflection_amplitude**: Reflection amplitude |Gamma| used by the optimizers.
    * **calibration_offset_db**: Offset added to reported dBm values (cable loss compensation).
    """

    geometry: geo.GeometryConfig
    tx_antenna: AntennaSpec = AntennaSpec()
    rx_antenna: AntennaSpec = AntennaSpec()
    cell_pattern: PatternModel = PatternModel.cosine_power(1.0)
    p_t: float = 1e-3
    reflection_amplitude: float = 0.8
    calibration_offset_db: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.p_t) and self.p_t > 0):
            raise ConfigError(f"transmit power must be positive, got {self.p_t!r}", path="p_t")
        if not 0 <= self.reflection_amplitude <= 1:
            raise ConfigError(
                f"must be in [0, 1], got {self.reflection_amplitude!r}",
                path="reflection_amplitude",
            )
        if not math.isfinite(self.calibration_offset_db):
            raise ConfigError("must be finite", path="calibration_offset_db")

    def with_distance(self, d2: float) -> "Scenario":
        return dataclasses.replace(self, geometry=self.geometry.with_distance(d2))


class PathFields(NamedTuple):
    """Field contributions at the receiver. Phasors are in sqrt(watt) units."""

    reflected_sum: complex
    los: complex
    los_power: float
    total_power: float

    @property
    def reflected_power(self) -> float:
        return abs(self.reflected_sum) ** 2


def cell_phasor(cell: geo.CellGeometry, gamma: complex, scenario: Scenario) -> complex:
    """Field reflected toward the receiver by one cell with reflection coefficient `gamma`."""
    g = scenario.geometry
    f_combine = combined_pattern(
        cell, scenario.tx_antenna, scenario.rx_antenna, scenario.cell_pattern
    )
    amplitude = (
        g.cell_dx
        * g.cell_dy
        * math.sqrt(
            scenario.p_t
            * scenario.tx_antenna.gain_ris_path
            * scenario.rx_antenna.gain_ris_path
            * f_combine
        )
        / (FOUR_PI * cell.r_t * cell.r_r)
    )
    k = TWO_PI / g.wavelength
    return gamma * amplitude * complex(np.exp(-1j * k * (cell.r_t + cell.r_r)))


@functools.lru_cache(maxsize=256)
def cell_table(cfg: geo.GeometryConfig) -> geo.CellGeometryTable:
    return geo.cell_geometry(cfg)


@functools.lru_cache(maxsize=256)
def unit_phasors(scenario: Scenario) -> np.ndarray:
    """Per-cell phasors for Gamma = 1, as a read-only `(rows, cols)` complex table.

    Cached per scenario (and therefore per receiver distance).
    """
    g = scenario.geometry
    cells = cell_table(g)
    f_combine = combined_pattern(
        cells, scenario.tx_antenna, scenario.rx_antenna, scenario.cell_pattern
    )
    amplitude = (
        g.cell_dx
        * g.cell_dy
        * np.sqrt(
            scenario.p_t
            * scenario.tx_antenna.gain_ris_path
            * scenario.rx_antenna.gain_ris_path
            * f_combine
        )
        / (FOUR_PI * cells.r_t * cells.r_r)
    )
    k = TWO_PI / g.wavelength
    phasors = amplitude * np.exp(-1j * k * (cells.r_t + cells.r_r))
    phasors.setflags(write=False)
    return phasors


def _check_shape(scenario: Scenario, config: PhaseConfiguration):
    if config.shape != scenario.geometry.shape:
        raise DimensionError(
            f"configuration is {config.shape[0]}x{config.shape[1]} but the RIS is "
            f"{scenario.geometry.rows}x{scenario.geometry.cols}"
        )


def _sum(values: np.ndarray, compensated: bool) -> complex:
    flat = values.ravel()
    if compensated:
        return complex(math.fsum(flat.real), math.fsum(flat.imag))
    return complex(flat.sum())


def reflected_field(
    scenario: Scenario, config: PhaseConfiguration, compensated: bool = False
) -> complex:
    """Total field through the RIS path: the sum of every cell phasor, in row-major
    order. With `compensated=True` the sum is correctly rounded (`math.fsum` on real and
    imaginary parts); otherwise numpy's pairwise summation is used.
    """
    _check_shape(scenario, config)
    return _sum(config.gamma * unit_phasors(scenario), compensated)


def los_power(scenario: Scenario) -> float:
    """Direct path power from the Friis law, in watts."""
    g = scenario.geometry
    d = geo.los_distance(g)
    return (
        scenario.p_t
        * scenario.tx_antenna.gain_direct_path
        * scenario.rx_antenna.gain_direct_path
        * g.wavelength**2
        / (FOUR_PI * d) ** 2
    )


def los_phasor(scenario: Scenario) -> complex:
    g = scenario.geometry
    d = geo.los_distance(g)
    k = TWO_PI / g.wavelength
    return math.sqrt(los_power(scenario)) * complex(np.exp(-1j * k * d))


def received_power(
    scenario: Scenario, config: PhaseConfiguration, compensated: bool = False
) -> PathFields:
    """Received power |S_r + S_los|^2 of the two-path model."""
    reflected = reflected_field(scenario, config, compensated=compensated)
    los = los_phasor(scenario)
    total = reflected + los
    return PathFields(
        reflected_sum=reflected,
        los=los,
        los_power=los_power(scenario),
        total_power=total.real * total.real + total.imag * total.imag,
    )


def report(scenario: Scenario, power: Union[float, PathFields]) -> float:
    """Reported dBm for a received power: calibration offset applied, floor clamped."""
    if isinstance(power, PathFields):
        power = power.total_power
    return reported_dbm(power, scenario.calibration_offset_db)
