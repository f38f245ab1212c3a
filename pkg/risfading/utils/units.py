import math

from ..core.exceptions import DomainError


# Reported powers never go below this level, so exact nulls stay finite in dBm.
DBM_FLOOR = -300.0


def watts_to_dbm(p: float) -> float:
    """Convert a power in watts to dBm (decibels referenced to 1 mW).

    **Parameters**

    * **p** `float` - Power in watts, strictly positive.

    **returns**  The power in dBm. Raises `DomainError` for non-positive input.
    """
    if not p > 0:
        raise DomainError(f"power must be positive to convert to dBm, got {p!r}")
    return 10.0 * math.log10(p / 1e-3)


def dbm_to_watts(p: float) -> float:
    """Convert a power in dBm to watts. Exact inverse of `watts_to_dbm`."""
    return 1e-3 * 10.0 ** (p / 10.0)


def reported_dbm(p: float, offset_db: float = 0.0) -> float:
    """Power in dBm as reported by the simulator: physical dBm plus the calibration
    offset, clamped to `DBM_FLOOR`.
    """
    if p <= 0:
        return DBM_FLOOR
    return max(watts_to_dbm(p) + offset_db, DBM_FLOOR)
