import enum


class StrategyId(enum.Enum):
    """RIS configuration strategies. Values are the names used on the command line and
    in configuration files.
    """

    DIRECT = "direct"  # direct path only, RIS reflects nothing
    RIS0 = "ris0"  # isophase surface, no optimization
    RIS1 = "ris1"  # 0/180 degrees, one control signal
    RIS2_GRID = "ris2-grid"  # full 360 degrees, one control signal, phase traversal
    RIS2_ANALYTIC = "ris2-analytic"  # full 360 degrees, one control signal, closed form
    RIS3_RANDOM = "ris3-random"  # 0/180 degrees per cell, random search + voting
    RIS3_GREEDY = "ris3-greedy"  # 0/180 degrees per cell, coordinate ascent with CSI
    RIS4 = "ris4"  # full 360 degrees per cell, closed form with CSI
    EXHAUSTIVE_BINARY = "exhaustive-binary"  # 0/180 degrees per cell, all patterns

    @property
    def column(self) -> str:
        """Column name of this strategy in CSV output."""
        return f"{self.value.replace('-', '_')}_dbm"

    @property
    def label(self) -> str:
        return LABELS[self]

    @classmethod
    def parse(cls, name: str) -> "StrategyId":
        try:
            return cls(name.strip().lower().replace("_", "-"))
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown strategy '{name}', expected one of: {names}") from None


LABELS = {
    StrategyId.DIRECT: "Direct path",
    StrategyId.RIS0: "RIS0",
    StrategyId.RIS1: "RIS1",
    StrategyId.RIS2_GRID: "RIS2 (traversal)",
    StrategyId.RIS2_ANALYTIC: "RIS2",
    StrategyId.RIS3_RANDOM: "RIS3",
    StrategyId.RIS3_GREEDY: "RIS3 (greedy)",
    StrategyId.RIS4: "RIS4",
    StrategyId.EXHAUSTIVE_BINARY: "Binary optimum",
}


class Spacing(enum.Enum):
    LINEAR = "linear"
    LOG = "log"


class OutputFormat(enum.Enum):
    CSV = "csv"
    SVG = "svg"
