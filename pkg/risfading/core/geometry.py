"""
Placement of the RIS grid, the transmitter and the receiver.

The RIS lies on the xoy plane with its geometric center at the origin. Terminals are
placed with the spherical convention x = r sin(theta) cos(phi), y = r sin(theta) sin(phi),
z = r cos(theta); the transmitter azimuth is fixed at pi and the receiver azimuth at 0, so
both sit on the xoz plane on opposite sides of the RIS normal.
"""

import dataclasses
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np
from scipy.constants import speed_of_light

from .exceptions import CellIndexError, ConfigError, DegenerateGeometryError

PHI_T = math.pi
PHI_R = 0.0


class Point3(NamedTuple):
    x: float
    y: float
    z: float


class CellIndex(NamedTuple):
    """1-based (row, column) index of a unit cell."""

    n: int
    m: int


def _check_count(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise ConfigError(f"must be a positive integer, got {value!r}", path=name)


def _check_positive(value, name):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ConfigError(f"must be a positive finite number, got {value!r}", path=name)


def _check_elevation(value, name):
    if not (isinstance(value, (int, float)) and 0 <= value < math.pi / 2):
        raise ConfigError(
            f"must be in [0, pi/2) radians (terminal in front of the RIS), got {value!r}",
            path=name,
        )


@dataclass(frozen=True)
class GeometryConfig:
    """RIS grid and terminal placement.

    **Parameters**

    * **rows**: Number of cell rows (N).
    * **cols**: Number of cell columns (M).
    * **cell_dx**, **cell_dy**: Cell pitch along x and y, in meters.
    * **d1**: Distance from the transmitter to the RIS center, in meters.
    * **d2**: Distance from the RIS center to the receiver, in meters.
    * **theta_t**, **theta_r**: Elevation of transmitter and receiver from the z-axis, in radians.
    * **frequency**: Carrier frequency in Hz. The wavelength is derived from it.
    """

    rows: int
    cols: int
    cell_dx: float
    cell_dy: float
    d1: float
    d2: float
    theta_t: float
    theta_r: float
    frequency: float

    def __post_init__(self):
        _check_count(self.rows, "rows")
        _check_count(self.cols, "cols")
        for name in ("cell_dx", "cell_dy", "d1", "d2", "frequency"):
            _check_positive(getattr(self, name), name)
        _check_elevation(self.theta_t, "theta_t")
        _check_elevation(self.theta_r, "theta_r")

    @property
    def phi_t(self) -> float:
        return PHI_T

    @property
    def phi_r(self) -> float:
        return PHI_R

    @property
    def wavelength(self) -> float:
        return speed_of_light / self.frequency

    @property
    def cell_count(self) -> int:
        return self.rows * self.cols

    @property
    def shape(self):
        return self.rows, self.cols

    def with_distance(self, d2: float) -> "GeometryConfig":
        """Returns a copy of this geometry with the receiver at distance `d2`."""
        return dataclasses.replace(self, d2=d2)


def cell_center(idx: CellIndex, cfg: GeometryConfig) -> Point3:
    """Center of the unit cell `idx`. The formula is evaluated in real arithmetic, so it
    also holds for odd grid sizes.
    """
    n, m = idx
    if not (1 <= n <= cfg.rows and 1 <= m <= cfg.cols):
        raise CellIndexError(n, m, cfg.rows, cfg.cols)
    return Point3(
        ((cfg.cols + 1) / 2 - m) * cfg.cell_dx,
        ((cfg.rows + 1) / 2 - n) * cfg.cell_dy,
        0.0,
    )


def tx_position(cfg: GeometryConfig) -> Point3:
    return Point3(-cfg.d1 * math.sin(cfg.theta_t), 0.0, cfg.d1 * math.cos(cfg.theta_t))


def rx_position(cfg: GeometryConfig) -> Point3:
    return Point3(cfg.d2 * math.sin(cfg.theta_r), 0.0, cfg.d2 * math.cos(cfg.theta_r))


def los_distance(cfg: GeometryConfig) -> float:
    """Transmitter to receiver distance (d). Raises `DegenerateGeometryError` when the
    two terminals coincide.
    """
    tx = tx_position(cfg)
    rx = rx_position(cfg)
    dx = rx.x - tx.x
    dy = rx.y - tx.y
    dz = rx.z - tx.z
    d = math.sqrt(dx * dx + dy * dy + dz * dz)
    if d == 0:
        raise DegenerateGeometryError("transmitter and receiver coincide")
    return d


class CellGeometry(NamedTuple):
    """Precomputed geometry of one unit cell. Angles in radians, distances in meters."""

    center: Point3
    r_t: float
    r_r: float
    theta_cell_t: float
    phi_cell_t: float
    theta_cell_r: float
    phi_cell_r: float
    theta_tx: float
    phi_tx: float
    theta_rx: float
    phi_rx: float


ARRAY_FIELDS = CellGeometry._fields[1:]


@dataclass(frozen=True)
class CellGeometryTable:
    """Per-cell geometry for a whole grid, stored as read-only `(rows, cols)` arrays.

    Attribute names match `CellGeometry`, so functions written against a single cell
    (for example `patterns.combined_pattern`) evaluate the whole table at once.
    """

    cfg: GeometryConfig
    x: np.ndarray
    y: np.ndarray
    r_t: np.ndarray
    r_r: np.ndarray
    theta_cell_t: np.ndarray
    phi_cell_t: np.ndarray
    theta_cell_r: np.ndarray
    phi_cell_r: np.ndarray
    theta_tx: np.ndarray
    phi_tx: np.ndarray
    theta_rx: np.ndarray
    phi_rx: np.ndarray

    @property
    def shape(self):
        return self.cfg.shape

    def __len__(self):
        return self.cfg.cell_count

    def __getitem__(self, idx: CellIndex) -> CellGeometry:
        n, m = idx
        if not (1 <= n <= self.cfg.rows and 1 <= m <= self.cfg.cols):
            raise CellIndexError(n, m, self.cfg.rows, self.cfg.cols)
        i, j = n - 1, m - 1
        return CellGeometry(
            Point3(float(self.x[i, j]), float(self.y[i, j]), 0.0),
            *(float(getattr(self, name)[i, j]) for name in ARRAY_FIELDS),
        )

    def __iter__(self) -> Iterator[CellGeometry]:
        """Iterates the cells in row-major order."""
        for n in range(1, self.cfg.rows + 1):
            for m in range(1, self.cfg.cols + 1):
                yield self[n, m]


def _antenna_angles(terminal: Point3, vx, vy, vz, r):
    """Off-boresight angles of the directions terminal -> cell, for an antenna at
    `terminal` aimed at the RIS center. (vx, vy, vz) is cell - terminal, r its norm.
    """
    norm = math.sqrt(terminal.x**2 + terminal.y**2 + terminal.z**2)
    bx, bz = -terminal.x / norm, -terminal.z / norm
    ux, uy, uz = vx / r, vy / r, vz / r
    cos_theta = np.clip(bx * ux + bz * uz, -1.0, 1.0)
    # local frame: e1 = y axis (perpendicular to the xoz boresight), e2 = b x e1
    phi = np.arctan2(uy, -bz * ux + bx * uz)
    return np.arccos(cos_theta), phi


def cell_geometry(cfg: GeometryConfig) -> CellGeometryTable:
    """Computes distances and angles for every cell of the grid.

    Cell side elevations satisfy cos(theta) = z_terminal / r, azimuths are the planar
    angles of (terminal - center) on the xoy plane, and the antenna side angles are
    measured from a boresight pointing at the RIS center.
    """
    n = np.arange(1, cfg.rows + 1, dtype=float)[:, None]
    m = np.arange(1, cfg.cols + 1, dtype=float)[None, :]
    x = np.broadcast_to(((cfg.cols + 1) / 2 - m) * cfg.cell_dx, cfg.shape).copy()
    y = np.broadcast_to(((cfg.rows + 1) / 2 - n) * cfg.cell_dy, cfg.shape).copy()

    tx = tx_position(cfg)
    rx = rx_position(cfg)

    tdx, tdy, tdz = tx.x - x, tx.y - y, np.full(cfg.shape, tx.z)
    r_t = np.sqrt(tdx * tdx + tdy * tdy + tdz * tdz)
    rdx, rdy, rdz = rx.x - x, rx.y - y, np.full(cfg.shape, rx.z)
    r_r = np.sqrt(rdx * rdx + rdy * rdy + rdz * rdz)

    theta_tx, phi_tx = _antenna_angles(tx, -tdx, -tdy, -tdz, r_t)
    theta_rx, phi_rx = _antenna_angles(rx, -rdx, -rdy, -rdz, r_r)

    arrays = dict(
        x=x,
        y=y,
        r_t=r_t,
        r_r=r_r,
        theta_cell_t=np.arccos(np.clip(tdz / r_t, -1.0, 1.0)),
        phi_cell_t=np.arctan2(tdy, tdx),
        theta_cell_r=np.arccos(np.clip(rdz / r_r, -1.0, 1.0)),
        phi_cell_r=np.arctan2(rdy, rdx),
        theta_tx=theta_tx,
        phi_tx=phi_tx,
        theta_rx=theta_rx,
        phi_rx=phi_rx,
    )
    for value in arrays.values():
        value.setflags(write=False)
    return CellGeometryTable(cfg=cfg, **arrays)
