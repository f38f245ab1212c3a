"""
Normalized power radiation patterns of antennas and unit cells.
"""

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import ConfigError

Angle = Union[float, np.ndarray]

ISOTROPIC = "isotropic"
COSINE_POWER = "cos_power"

# (cos theta)^161 underflows quickly off boresight; such values are flushed to zero.
FLUSH_BELOW = 1e-300

_PATTERN_RE = re.compile(
    r"^\s*cos(?:\s*\^\s*(?P<q>[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?))?(?P<unclamped>\s+unclamped)?\s*$"
)


@dataclass(frozen=True)
class PatternModel:
    """A normalized power pattern, either isotropic or `(cos theta)^q`.

    With `clamp` set, a cosine-power pattern is zero for theta in (pi/2, pi] (nothing is
    radiated behind the aperture). Without it, `|cos theta|^q` is used so values stay in [0, 1].
    """

    kind: str = ISOTROPIC
    q: float = 0.0
    clamp: bool = True

    def __post_init__(self):
        if self.kind not in (ISOTROPIC, COSINE_POWER):
            raise ConfigError(f"unknown pattern kind '{self.kind}'", path="pattern")
        if isinstance(self.q, bool) or not isinstance(self.q, (int, float)):
            raise ConfigError(f"cosine exponent must be a number, got {self.q!r}", path="pattern")
        object.__setattr__(self, "q", float(self.q))
        if not (math.isfinite(self.q) and self.q >= 0):
            raise ConfigError(
                f"cosine exponent must be finite and >= 0, got {self.q!r}", path="pattern"
            )

    @classmethod
    def isotropic(cls) -> "PatternModel":
        return cls(ISOTROPIC)

    @classmethod
    def cosine_power(cls, q: float = 1.0, clamp: bool = True) -> "PatternModel":
        return cls(COSINE_POWER, q=float(q), clamp=clamp)

    @classmethod
    def parse(cls, text: str) -> "PatternModel":
        """Parse the configuration file notation: `"isotropic"`, `"cos"`, `"cos^161"`,
        optionally followed by `" unclamped"`.
        """
        if not isinstance(text, str):
            raise ConfigError(f"pattern must be a string, got {text!r}", path="pattern")
        if text.strip() == ISOTROPIC:
            return cls.isotropic()
        match = _PATTERN_RE.match(text)
        if not match:
            raise ConfigError(
                f"invalid pattern '{text}', expected 'isotropic' or 'cos^q'", path="pattern"
            )
        q = float(match.group("q")) if match.group("q") is not None else 1.0
        return cls.cosine_power(q, clamp=match.group("unclamped") is None)

    def __str__(self) -> str:
        if self.kind == ISOTROPIC:
            return ISOTROPIC
        q = int(self.q) if self.q.is_integer() else self.q
        text = "cos" if q == 1 else f"cos^{q}"
        return text if self.clamp else f"{text} unclamped"

    def evaluate(self, theta: Angle, phi: Angle = 0.0) -> Angle:
        """Pattern value at elevation `theta` (radians, in [0, pi]). The azimuth is
        accepted for interface symmetry; the shipped patterns do not depend on it.
        """
        if self.kind == ISOTROPIC:
            return np.ones_like(theta, dtype=float) if np.ndim(theta) else 1.0
        c = np.cos(theta)
        if self.clamp:
            value = np.where(np.asarray(theta) <= math.pi / 2, np.abs(c) ** self.q, 0.0)
        else:
            value = np.abs(c) ** self.q
        value = np.where(value < FLUSH_BELOW, 0.0, np.minimum(value, 1.0))
        return value if np.ndim(value) else float(value)


@dataclass(frozen=True)
class AntennaSpec:
    """Terminal antenna: gains toward the RIS path and the direct path plus the pattern
    used on the RIS path. Gain and pattern are independent inputs.
    """

    gain_ris_path: float = 1.0
    gain_direct_path: float = 1.0
    pattern: PatternModel = PatternModel()

    def __post_init__(self):
        for name in ("gain_ris_path", "gain_direct_path"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"gain must be positive, got {value!r}", path=name)


def pattern_value(model: PatternModel, theta: Angle, phi: Angle = 0.0) -> Angle:
    return model.evaluate(theta, phi)


def combined_pattern(cell, tx: AntennaSpec, rx: AntennaSpec, cell_pattern: PatternModel):
    """Product of the four pattern factors seen by one RIS sub-path:
    transmitting antenna, cell toward the transmitter, cell toward the receiver and
    receiving antenna.

    `cell` is either a single `CellGeometry` or a whole `CellGeometryTable`.
    """
    return (
        tx.pattern.evaluate(cell.theta_tx, cell.phi_tx)
        * cell_pattern.evaluate(cell.theta_cell_t, cell.phi_cell_t)
        * cell_pattern.evaluate(cell.theta_cell_r, cell.phi_cell_r)
        * rx.pattern.evaluate(cell.theta_rx, cell.phi_rx)
    )
