"""Exception types raised across the package."""


class DmdsalError(Exception):
    """Base class for all package errors."""


class DegenerateInput(DmdsalError, ValueError):
    pass


class RankZero(DmdsalError, ValueError):
    pass


class NonFinite(DmdsalError, ValueError):
    pass


class ShapeMismatch(DmdsalError, ValueError):
    pass


class TooFewSnapshots(DmdsalError, ValueError):
    pass


class DegenerateGroundTruth(DmdsalError, ValueError):
    pass


class EmptyDataset(DmdsalError, ValueError):
    pass


class ConfigError(DmdsalError, ValueError):
    """A configuration value violates one of its invariants."""
