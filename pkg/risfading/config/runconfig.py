import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Union

import yaml

from ..core import exceptions
from ..core import experiment
from ..core.dataclasses_dict import DataclassDictMixIn, join_path
from ..core.experiment import DEFAULT_SEED, DEFAULT_STRATEGIES, SweepSpec
from ..types import OutputFormat
from .models import (
    Antennas,
    Geometry,
    Link,
    Output,
    Strategies,
    Sweep,
    build_scenario,
    only_calibration,
)

"""
| key        | preset document                  | explicit document |
|------------|----------------------------------|-------------------|
| preset     | required                         | absent            |
| geometry   | rejected                         | required          |
| sweep      | rejected                         | required          |
| antennas   | rejected                         | optional          |
| link       | only `calibration_offset_db`     | optional          |
| strategies | optional, `names` replaces preset | optional          |
| output     | optional                         | optional          |
"""

PRESET_REJECTS = ("geometry", "sweep", "antennas")


@dataclass
class RunConfig(DataclassDictMixIn):
    """A simulation run: either a named preset or an explicit scenario with its sweep,
    plus strategy parameters and output settings.

    **Parameters**

    * **preset**: Name of a built-in preset (`fig3a`, `fig3b`, `fig5`).
    * **name**: Run name, used for output file names. Defaults to the preset name or `sweep`.
    * **seed**: Root seed of the randomized strategies.
    * **workers**: Distance points evaluated concurrently.
    * **verbosity**: 0 warnings only, 1 info, 2 debug.
    * **geometry**, **antennas**, **link**, **sweep**: Explicit scenario sections.
    * **strategies**: Strategy selection and parameters.
    * **output**: Output directory and formats.
    """

    preset: str = None
    name: str = None
    seed: int = DEFAULT_SEED
    workers: int = 1
    verbosity: int = 0
    geometry: Geometry = None
    antennas: Antennas = None
    link: Link = None
    sweep: Sweep = None
    strategies: Strategies = field(default_factory=Strategies)
    output: Output = field(default_factory=Output)

    def __post_init__(self):
        if self.preset is not None:
            if self.preset not in experiment.PRESETS:
                raise exceptions.ConfigError(
                    f"unknown preset '{self.preset}', expected one of: "
                    f"{', '.join(experiment.PRESETS)}",
                    path="preset",
                )
            for name in PRESET_REJECTS:
                if getattr(self, name) is not None:
                    raise exceptions.ConfigError(
                        "not allowed together with a preset", path=name
                    )
            if self.link is not None and not only_calibration(self.link):
                raise exceptions.ConfigError(
                    "only calibration_offset_db may be set together with a preset",
                    path="link",
                )
        elif self.geometry is None or self.sweep is None:
            missing = "geometry" if self.geometry is None else "sweep"
            raise exceptions.ConfigError(
                "missing required key (either preset, or geometry and sweep)", path=missing
            )
        if self.seed < 0:
            raise exceptions.ConfigError(f"must be >= 0, got {self.seed!r}", path="seed")
        if self.workers < 1:
            raise exceptions.ConfigError(f"must be >= 1, got {self.workers!r}", path="workers")
        if self.verbosity < 0:
            raise exceptions.ConfigError(
                f"must be >= 0, got {self.verbosity!r}", path="verbosity"
            )
        if self.strategies is None:
            self.strategies = Strategies()
        if self.output is None:
            self.output = Output()

    @classmethod
    def from_file(cls, fname: Union[str, Path]) -> "RunConfig":
        """Creates an instance of the run configuration from a YAML file.

        **Parameters**

        * **fname**: Path to the configuration file.
        """
        fname = Path(fname)
        try:
            text = fname.read_text()
        except OSError as e:
            raise exceptions.ConfigError(f"cannot read {fname}: {e.strerror}") from None
        return parse_config(text)

    @property
    def run_name(self) -> str:
        return self.name or self.preset or "sweep"

    @property
    def formats(self) -> List[OutputFormat]:
        return self.output.formats

    def with_overrides(self, **overrides) -> "RunConfig":
        """Returns a copy with command line overrides applied. Recognized keys are
        `seed`, `workers`, `verbosity`, `names`, `iterations`, `grid_step_deg`,
        `max_sweeps`, `vote`, `calibration_offset_db`, `path` and `formats`; `None`
        values are ignored.
        """
        overrides = {k: v for k, v in overrides.items() if v is not None}
        top = {k: overrides.pop(k) for k in ("seed", "workers", "verbosity") if k in overrides}
        strategy_keys = {f.name for f in dataclasses.fields(Strategies)}
        strategy = {k: overrides.pop(k) for k in list(overrides) if k in strategy_keys}
        output = {k: overrides.pop(k) for k in ("path", "formats") if k in overrides}
        offset = overrides.pop("calibration_offset_db", None)
        if overrides:
            raise exceptions.ConfigError(f"unknown override '{next(iter(overrides))}'")

        link = self.link
        if offset is not None:
            link = dataclasses.replace(link or Link(), calibration_offset_db=offset)
        try:
            strategies = dataclasses.replace(self.strategies, **strategy)
        except exceptions.ConfigError as e:
            raise exceptions.ConfigError(e.message, path=join_path("strategies", e.path)) from None
        try:
            output = dataclasses.replace(self.output, **output)
        except exceptions.ConfigError as e:
            raise exceptions.ConfigError(e.message, path=join_path("output", e.path)) from None
        return dataclasses.replace(
            self, link=link, strategies=strategies, output=output, **top
        )

    def to_sweep_spec(self) -> SweepSpec:
        """Resolves the document into a runnable sweep: degrees become radians and dBm
        become watts.
        """
        names = self.strategies.names
        params = self.strategies.to_params()
        if self.preset is not None:
            base = experiment.preset(self.preset)
            scenario = base.scenario
            if self.link is not None:
                scenario = dataclasses.replace(
                    scenario, calibration_offset_db=self.link.calibration_offset_db
                )
            return SweepSpec(
                scenario=scenario,
                distances=base.distances,
                strategies=tuple(names) if names else base.strategies,
                seed=self.seed,
                params=params,
                name=self.run_name,
            )

        distances = self.sweep.to_range()
        scenario = build_scenario(
            self.geometry, self.antennas or Antennas(), self.link or Link(), distances.distances()[0]
        )
        return SweepSpec(
            scenario=scenario,
            distances=distances,
            strategies=tuple(names) if names else DEFAULT_STRATEGIES,
            seed=self.seed,
            params=params,
            name=self.run_name,
        )


def parse_config(text: str) -> RunConfig:
    """Parses and validates a YAML run configuration. Every error is a `ConfigError` whose
    message starts with the offending key path.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise exceptions.ConfigError(f"malformed document: {e}") from None
    if doc is None:
        raise exceptions.ConfigError("empty document")
    return RunConfig.from_dict(doc)


def preset_config(name: str) -> RunConfig:
    return RunConfig(preset=name)
