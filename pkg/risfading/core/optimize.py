"""
Phase configuration strategies.

Every optimizer keeps the reflection amplitude fixed at the scenario's |Gamma| and only
chooses phases. Candidates are compared with a fast evaluation of the two-path sum; the
power stored in the result is always a fresh `channel.received_power` of the returned
configuration.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import channel
from .channel import PhaseConfiguration, Scenario
from .exceptions import CapacityError, ConfigError
from ..types import StrategyId

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

DEFAULT_ITERATIONS = 1000
DEFAULT_GRID_STEP = math.radians(1.0)
DEFAULT_MAX_SWEEPS = 20
EXHAUSTIVE_LIMIT = 20

# candidate rows x cells evaluated per block
_BLOCK_CELLS = 1 << 22


def _block_rows(cell_count: int) -> int:
    return max(1, _BLOCK_CELLS // cell_count)


@dataclass(frozen=True)
class StrategyParams:
    """Tunable parameters of the strategies.

    **Parameters**

    * **iterations**: Random draws of the RIS3 random search.
    * **grid_step**: Phase step of the RIS2 traversal, in radians.
    * **max_sweeps**: Sweep limit of the RIS3 coordinate ascent.
    * **vote**: Add the majority-vote configuration to the RIS3 random candidates.
    """

    iterations: int = DEFAULT_ITERATIONS
    grid_step: float = DEFAULT_GRID_STEP
    max_sweeps: int = DEFAULT_MAX_SWEEPS
    vote: bool = False

    def __post_init__(self):
        if isinstance(self.iterations, bool) or not isinstance(self.iterations, int) or self.iterations < 1:
            raise ConfigError(f"must be an integer >= 1, got {self.iterations!r}", path="iterations")
        if not 0 < self.grid_step <= math.pi:
            raise ConfigError(
                f"must be in (0, 180] degrees, got {math.degrees(self.grid_step)!r}",
                path="grid_step",
            )
        if isinstance(self.max_sweeps, bool) or not isinstance(self.max_sweeps, int) or self.max_sweeps < 1:
            raise ConfigError(f"must be an integer >= 1, got {self.max_sweeps!r}", path="max_sweeps")


@dataclass
class OptimizationResult:
    """Outcome of one strategy on one scenario.

    `phase` is the winning global phase of integral strategies, `seed` the seed of
    randomized ones, `sweeps`/`flips` the work done by the coordinate ascent.
    """

    config: PhaseConfiguration
    power: float
    evaluations: int
    seed: Optional[int] = None
    phase: Optional[float] = None
    sweeps: Optional[int] = None
    flips: Optional[int] = None


def _power(scenario: Scenario, config: PhaseConfiguration) -> float:
    return channel.received_power(scenario, config).total_power


def _scaled_phasors(scenario: Scenario) -> np.ndarray:
    """Row-major cell phasors at the scenario's reflection amplitude and phase 0."""
    return scenario.reflection_amplitude * channel.unit_phasors(scenario).ravel()


def _binary_powers(bits: np.ndarray, phasors: np.ndarray, los: complex) -> np.ndarray:
    """Received power for each row of a 0/1 table (state 1 meaning phase pi)."""
    signs = 1.0 - 2.0 * bits
    # einsum keeps a fixed reduction order, results do not depend on BLAS threading
    fields = np.einsum("ij,j->i", signs, phasors) + los
    return fields.real**2 + fields.imag**2


def _uniform(scenario: Scenario, phase: float, amplitude: float = None) -> PhaseConfiguration:
    g = scenario.geometry
    if amplitude is None:
        amplitude = scenario.reflection_amplitude
    return PhaseConfiguration.uniform(g.rows, g.cols, amplitude, phase)


def ris0_uniform(scenario: Scenario, amplitude: float = None, phase: float = 0.0) -> PhaseConfiguration:
    """Isophase surface: every cell set to `amplitude * exp(j phase)`."""
    if amplitude is not None and not 0 <= amplitude <= 1:
        raise ConfigError(f"must be in [0, 1], got {amplitude!r}", path="amplitude")
    return _uniform(scenario, phase, amplitude)


def direct_path(scenario: Scenario) -> OptimizationResult:
    """Reference with the RIS reflecting nothing: the received power is the direct path."""
    config = _uniform(scenario, 0.0, amplitude=0.0)
    return OptimizationResult(config, _power(scenario, config), evaluations=1)


def optimize_ris0(scenario: Scenario) -> OptimizationResult:
    config = ris0_uniform(scenario)
    return OptimizationResult(config, _power(scenario, config), evaluations=1, phase=0.0)


def optimize_ris1(scenario: Scenario) -> OptimizationResult:
    """Best of the two integral binary states (global phase 0 or pi)."""
    best = None
    for phase in (0.0, math.pi):
        config = _uniform(scenario, phase)
        power = _power(scenario, config)
        if best is None or power > best.power:
            best = OptimizationResult(config, power, evaluations=2, phase=phase)
    return best


def optimize_ris2_grid(scenario: Scenario, step: float = DEFAULT_GRID_STEP) -> OptimizationResult:
    """Traverses the global phases {0, step, 2 step, ...} < 2 pi and keeps the best.
    Ties go to the smallest phase.
    """
    if not 0 < step <= math.pi:
        raise ConfigError(f"must be in (0, pi], got {step!r}", path="grid_step")
    phases = step * np.arange(int(math.ceil(TWO_PI / step)))
    phases = phases[phases < TWO_PI - 1e-9]

    base = channel.reflected_field(scenario, _uniform(scenario, 0.0))
    fields = base * np.exp(1j * phases) + channel.los_phasor(scenario)
    powers = fields.real**2 + fields.imag**2
    phase = float(phases[int(np.argmax(powers))])

    config = _uniform(scenario, phase)
    return OptimizationResult(
        config, _power(scenario, config), evaluations=len(phases), phase=phase
    )


def optimize_ris2_analytic(scenario: Scenario) -> OptimizationResult:
    """Closed form of the integral continuous class: rotate the RIS field onto the
    direct path phasor, reaching (|S_r| + |S_los|)^2.
    """
    base = channel.reflected_field(scenario, _uniform(scenario, 0.0))
    if base == 0:
        phase = 0.0
    else:
        phase = float(np.mod(np.angle(channel.los_phasor(scenario)) - np.angle(base), TWO_PI))
        if phase >= TWO_PI:
            phase = 0.0
    config = _uniform(scenario, phase)
    return OptimizationResult(config, _power(scenario, config), evaluations=1, phase=phase)


def _vote(bits: np.ndarray, powers: np.ndarray) -> np.ndarray:
    """Per cell, the state whose draws produced the higher mean received power."""
    ones = bits.sum(axis=0, dtype=np.int64)
    zeros = len(bits) - ones
    power_ones = np.einsum("i,ij->j", powers, bits.astype(float))
    power_zeros = powers.sum() - power_ones
    with np.errstate(divide="ignore", invalid="ignore"):
        mean_ones = power_ones / ones
        mean_zeros = power_zeros / zeros
    return ((ones > 0) & (zeros > 0) & (mean_ones > mean_zeros)).astype(np.uint8)


def optimize_ris3_random(
    scenario: Scenario, iterations: int = DEFAULT_ITERATIONS, seed: int = 0, vote: bool = False
) -> OptimizationResult:
    """Random search over per-cell binary phases.

    Draws `iterations` configurations with every cell uniformly in {0, pi}. The two
    uniform configurations are always candidates too, so the result is never worse than
    RIS1. With `vote`, every cell then takes the state whose draws gave the higher mean
    power, and that configuration is one more candidate. Only received power samples
    are used, no per-cell channel knowledge.
    """
    if iterations < 1:
        raise ConfigError(f"must be >= 1, got {iterations!r}", path="iterations")
    g = scenario.geometry
    phasors = _scaled_phasors(scenario)
    los = channel.los_phasor(scenario)
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(iterations, g.cell_count), dtype=np.uint8)
    block = _block_rows(g.cell_count)

    candidates = np.concatenate(
        [np.zeros((1, g.cell_count), np.uint8), np.ones((1, g.cell_count), np.uint8)]
    )
    powers = _binary_powers(candidates, phasors, los)
    drawn = np.concatenate(
        [
            _binary_powers(bits[i : i + block], phasors, los)
            for i in range(0, iterations, block)
        ]
    )
    candidates = np.concatenate([candidates, bits])
    powers = np.concatenate([powers, drawn])
    if vote:
        voted = _vote(bits, drawn)[None, :]
        candidates = np.concatenate([candidates, voted])
        powers = np.concatenate([powers, _binary_powers(voted, phasors, los)])

    best = int(np.argmax(powers))
    config = PhaseConfiguration.binary(candidates[best].reshape(g.shape), scenario.reflection_amplitude)
    return OptimizationResult(
        config, _power(scenario, config), evaluations=len(powers), seed=seed
    )


def optimize_ris3_greedy(scenario: Scenario, max_sweeps: int = DEFAULT_MAX_SWEEPS) -> OptimizationResult:
    """Coordinate ascent over per-cell binary phases, starting from the better uniform
    configuration. Each cell in row-major order is flipped when that strictly increases
    the received power; sweeps repeat until one makes no flip or `max_sweeps` is reached.
    Needs per-cell channel knowledge.
    """
    if max_sweeps < 1:
        raise ConfigError(f"must be >= 1, got {max_sweeps!r}", path="max_sweeps")
    start = optimize_ris1(scenario)
    phasors = _scaled_phasors(scenario).tolist()
    signs = [1.0 if start.phase == 0 else -1.0] * len(phasors)
    field = signs[0] * complex(np.sum(_scaled_phasors(scenario))) + channel.los_phasor(scenario)
    power = field.real**2 + field.imag**2

    evaluations = start.evaluations
    flips = sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        flipped = False
        for i, c in enumerate(phasors):
            candidate = field - 2.0 * signs[i] * c
            candidate_power = candidate.real**2 + candidate.imag**2
            evaluations += 1
            if candidate_power > power:
                field, power = candidate, candidate_power
                signs[i] = -signs[i]
                flips += 1
                flipped = True
        if not flipped:
            break

    g = scenario.geometry
    bits = (np.asarray(signs) < 0).reshape(g.shape)
    config = PhaseConfiguration.binary(bits, scenario.reflection_amplitude)
    return OptimizationResult(
        config, _power(scenario, config), evaluations=evaluations, sweeps=sweeps, flips=flips
    )


def optimize_ris4(scenario: Scenario) -> OptimizationResult:
    """Closed form with full per-cell control: every cell phasor is rotated onto the
    direct path phasor. Cells with a zero phasor get phase 0.
    """
    phasors = channel.unit_phasors(scenario)
    target = np.angle(channel.los_phasor(scenario))
    phase = np.where(np.abs(phasors) > 0, target - np.angle(phasors), 0.0)
    config = PhaseConfiguration(np.full(phase.shape, scenario.reflection_amplitude), phase)
    return OptimizationResult(config, _power(scenario, config), evaluations=1)


def exhaustive_binary_oracle(scenario: Scenario) -> OptimizationResult:
    """Enumerates every binary configuration (cell (1,1) is the most significant bit,
    phase 0 is bit 0). Ties go to the smallest bit pattern.
    """
    g = scenario.geometry
    size = g.cell_count
    if size > EXHAUSTIVE_LIMIT:
        raise CapacityError("exhaustive binary search over cells", size, EXHAUSTIVE_LIMIT)
    phasors = _scaled_phasors(scenario)
    los = channel.los_phasor(scenario)
    shifts = np.arange(size - 1, -1, -1, dtype=np.int64)
    total = 1 << size

    best_power, best_pattern = -1.0, 0
    block = _block_rows(size)
    for start in range(0, total, block):
        patterns = np.arange(start, min(start + block, total), dtype=np.int64)
        bits = ((patterns[:, None] >> shifts) & 1).astype(np.uint8)
        powers = _binary_powers(bits, phasors, los)
        i = int(np.argmax(powers))
        if powers[i] > best_power:
            best_power, best_pattern = float(powers[i]), int(patterns[i])

    bits = ((best_pattern >> shifts) & 1).reshape(g.shape)
    config = PhaseConfiguration.binary(bits, scenario.reflection_amplitude)
    return OptimizationResult(config, _power(scenario, config), evaluations=total)


def upper_bound_power(scenario: Scenario, amplitude: float = None) -> float:
    """Largest received power reachable by any phase choice at the given amplitude:
    (|Gamma| sum|c| + sqrt(P_los))^2, attained when all phasors are co-phased.
    """
    if amplitude is None:
        amplitude = scenario.reflection_amplitude
    if not 0 <= amplitude <= 1:
        raise ConfigError(f"must be in [0, 1], got {amplitude!r}", path="amplitude")
    coherent = amplitude * float(np.abs(channel.unit_phasors(scenario)).sum())
    return (coherent + math.sqrt(channel.los_power(scenario))) ** 2


def run_strategy(
    strategy: StrategyId,
    scenario: Scenario,
    params: StrategyParams = StrategyParams(),
    seed: int = 0,
) -> OptimizationResult:
    """Runs one strategy. `seed` is only used by randomized strategies."""
    if strategy is StrategyId.DIRECT:
        result = direct_path(scenario)
    elif strategy is StrategyId.RIS0:
        result = optimize_ris0(scenario)
    elif strategy is StrategyId.RIS1:
        result = optimize_ris1(scenario)
    elif strategy is StrategyId.RIS2_GRID:
        result = optimize_ris2_grid(scenario, params.grid_step)
    elif strategy is StrategyId.RIS2_ANALYTIC:
        result = optimize_ris2_analytic(scenario)
    elif strategy is StrategyId.RIS3_RANDOM:
        result = optimize_ris3_random(scenario, params.iterations, seed=seed, vote=params.vote)
    elif strategy is StrategyId.RIS3_GREEDY:
        result = optimize_ris3_greedy(scenario, params.max_sweeps)
    elif strategy is StrategyId.RIS4:
        result = optimize_ris4(scenario)
    elif strategy is StrategyId.EXHAUSTIVE_BINARY:
        result = exhaustive_binary_oracle(scenario)
    else:
        raise ValueError(f"Unknown strategy: {strategy}")
    logger.debug(
        "%s at d2=%.6g m: %.6g W after %d evaluations",
        strategy.value,
        scenario.geometry.d2,
        result.power,
        result.evaluations,
    )
    return result
