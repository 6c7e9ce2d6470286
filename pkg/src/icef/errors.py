"""Exception hierarchy shared by every module of the package."""


class IcefError(Exception):
    """Base class for all package errors."""


class ConfigurationError(IcefError, ValueError):
    pass


class DimensionError(IcefError, ValueError):
    pass


class InvalidSignalError(IcefError, ValueError):
    pass


class ContractError(IcefError, ValueError):
    """An operation was called with inputs outside its contract."""


class StatisticsError(IcefError, ValueError):
    pass


class ExtrapolationError(StatisticsError):
    """A readout was requested outside the observed range of a curve."""


class ParseError(IcefError, ValueError):
    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class PlanError(IcefError, ValueError):
    """Experiment plan failed schema validation; ``errors`` holds (path, message) pairs."""

    def __init__(self, errors):
        self.errors = list(errors)
        lines = [f"{path or '<root>'}: {msg}" for path, msg in self.errors]
        super().__init__("invalid plan:\n  " + "\n  ".join(lines))
