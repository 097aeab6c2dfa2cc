"""Exception hierarchy shared by all repgraph modules."""

from __future__ import annotations


class RepgraphError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(RepgraphError, ValueError):
    pass


class WindowTooSmallError(RepgraphError):
    """A requested ball reaches vertices whose neighbourhood was truncated."""

    def __init__(self, vertex: int, radius: int, boundary_vertex: int):
        self.vertex = vertex
        self.radius = radius
        self.boundary_vertex = boundary_vertex
        super().__init__(
            f"window too small: ball of radius {radius} around {vertex} "
            f"needs the full neighbourhood of truncated vertex {boundary_vertex}"
        )


class DisconnectedError(RepgraphError):
    """Vertex set is not connected; ``partition`` holds two witness parts."""

    def __init__(self, partition: tuple[frozenset, frozenset]):
        self.partition = partition
        a, b = partition
        super().__init__(
            f"vertex set is disconnected: component {sorted(a)[:8]} "
            f"does not reach {sorted(b)[:8]}"
        )


class GenerationError(RepgraphError):
    def __init__(self, message: str, pair: tuple | None = None):
        self.pair = pair
        super().__init__(message)


class EnumerationCapError(RepgraphError):
    pass


class CapacityCapError(RepgraphError):
    pass


class CoverageError(RepgraphError):
    pass


class ModelError(RepgraphError):
    pass


class ExperimentRefused(RepgraphError):
    pass


class ConfigError(RepgraphError):
    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
