"""
Exceptions.
"""


class ConfigError(Exception):
    """
    Configuration specific errors.
    """

    def __init__(self, message: str, path: str = None) -> None:
        super().__init__(message)
        self.message = message
        self.path = path

    def __str__(self) -> str:
        if self.path:
            return f"{self.path}: {self.message}"
        return self.message


class DimensionError(ConfigError):
    """
    A phase configuration table does not match the RIS grid.
    """


class DegenerateGeometryError(ConfigError):
    """
    The geometry places two points that must be distinct at the same position.
    """


class CellIndexError(IndexError):
    """
    Cell index outside the RIS grid.
    """

    def __init__(self, n: int, m: int, rows: int, cols: int) -> None:
        super().__init__()
        self.n = n
        self.m = m
        self.rows = rows
        self.cols = cols

    def __str__(self) -> str:
        return (
            f"cell ({self.n}, {self.m}) outside the {self.rows}x{self.cols} grid "
            "(indices are 1-based)"
        )


class DomainError(ValueError):
    """
    Argument outside the mathematical domain of an operation.
    """


class CapacityError(Exception):
    """
    Problem too large for an exhaustive computation.
    """

    def __init__(self, name, size, limit):
        self.name = name
        self.size = size
        self.limit = limit

    def __str__(self):
        return f"{self.name} of size {self.size} exceeds the limit of {self.limit}"
