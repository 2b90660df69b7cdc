"""Exception types raised across the package."""


class TrafficNetError(Exception):
    """Base class for all package errors."""


class LengthMismatch(TrafficNetError, ValueError):
    pass


class EmptyResult(TrafficNetError, ValueError):
    pass


class NoEdges(TrafficNetError, ValueError):
    pass


class Disconnected(TrafficNetError, ValueError):
    pass


class TooFewPoints(TrafficNetError, ValueError):
    pass


class InvalidStrategy(TrafficNetError, ValueError):
    pass


class CountTooLarge(TrafficNetError, ValueError):
    pass


class InvalidParams(TrafficNetError, ValueError):
    pass


class Stuck(TrafficNetError, RuntimeError):
    """Degree-preserving rewiring could not reach its swap target."""


class IndexOutOfRange(TrafficNetError, IndexError):
    pass


class DataError(TrafficNetError, ValueError):
    """Malformed input file."""
