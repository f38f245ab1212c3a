import csv
import io
import logging
import os
import tempfile
from pathlib import Path
from typing import BinaryIO, TextIO, Union

import yaml

from .config.runconfig import RunConfig, parse_config
from .core.exceptions import DomainError
from .core.experiment import SweepResult

__all__ = ["load_config", "dump_config", "render_csv", "emit_csv", "write_atomic"]

logger = logging.getLogger(__name__)

Destination = Union[str, os.PathLike, BinaryIO]


def load_config(stream: Union[str, TextIO]) -> RunConfig:
    """Load a run configuration defined as YAML. Returns a validated `RunConfig` or raise
    a `ConfigError`.

    **parameters**

    * **stream** - A file-like object or a string with the YAML document.
    """
    if not isinstance(stream, str):
        stream = stream.read()
    return parse_config(stream)


def dump_config(config: RunConfig, stream: TextIO = None, indent=2):
    """Write a run configuration as YAML. Keys equal to their default are omitted and
    `load_config` reads the result back to an equal configuration.

    **parameters**

    * **config** - The configuration to write.
    * **stream** - Open file where to write. When not set the content is returned as a string.
    * **indent** - Number of characters for indenting nested blocks.
    """
    return yaml.safe_dump(
        config.to_dict(), stream, indent=indent, sort_keys=False, default_flow_style=False
    )


def _number(value: float) -> str:
    return f"{value:.5e}"


def render_csv(result: SweepResult) -> bytes:
    """CSV table of a sweep: `d2_m` followed by one dBm column per strategy, in request
    order. Numbers use 6 significant digits in scientific notation and lines end with
    a single line feed, so identical results give identical bytes.
    """
    if not len(result):
        raise DomainError("cannot emit an empty sweep result")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["d2_m"] + [s.column for s in result.strategies])
    for row in result.rows:
        writer.writerow(
            [_number(row.d2)] + [_number(row.outcomes[s].dbm) for s in result.strategies]
        )
    return buf.getvalue().encode("ascii")


def write_atomic(destination: Union[str, os.PathLike], data: bytes) -> int:
    """Writes `data` to a temporary file next to `destination` and renames it into place,
    so readers never see a partial file. Returns the byte count.
    """
    destination = Path(destination)
    fd, tmp = tempfile.mkstemp(prefix=f".{destination.name}.", dir=destination.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, destination)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
    logger.info("wrote %s (%d bytes)", destination, len(data))
    return len(data)


def write_output(data: bytes, destination: Destination) -> int:
    if hasattr(destination, "write"):
        destination.write(data)
        return len(data)
    return write_atomic(destination, data)


def emit_csv(result: SweepResult, destination: Destination) -> int:
    """Writes the CSV table of `result` to a path (atomically) or a binary stream.
    Returns the number of bytes written.
    """
    return write_output(render_csv(result), destination)
