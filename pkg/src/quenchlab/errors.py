"""Exception types shared across the package."""


class QuenchLabError(Exception):
    """Base class for all package errors."""


class ParameterError(QuenchLabError, ValueError):
    """An argument violates a documented precondition."""


class CapacityError(QuenchLabError, ValueError):
    """A requested object would exceed the supported problem size."""


class BasisLookupError(QuenchLabError, KeyError):
    """A configuration is not a member of the basis it was looked up in."""


class EmptyWindowError(QuenchLabError, ValueError):
    """An energy window contains no levels; enlarge the window."""


class DiagonalizationError(QuenchLabError, RuntimeError):
    """The dense eigensolver failed to converge."""


class ConfigError(QuenchLabError, ValueError):
    """A campaign configuration file is malformed or inconsistent."""
