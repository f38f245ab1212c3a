"""Regression artifacts under `tests/data`.

A missing artifact is recorded by the first run and compared byte for byte afterwards.
`RISFADING_UPDATE_GOLDEN=1` records it again.
"""
import os
from pathlib import Path

import yaml

DATA = Path(__file__).parent.joinpath("data")


def check_golden(name: str, data: bytes):
    path = DATA.joinpath(name)
    if os.environ.get("RISFADING_UPDATE_GOLDEN") == "1" or not path.exists():
        path.write_bytes(data)
    assert data == path.read_bytes(), f"{name} differs from the recorded artifact"


def check_pinned(name: str, values: dict):
    """Pins named regression values, floats rounded to 4 decimals."""
    rounded = {k: round(v, 4) if isinstance(v, float) else v for k, v in values.items()}
    check_golden(name, yaml.safe_dump(rounded, sort_keys=True).encode("ascii"))
