"""Exception hierarchy shared by the library and the command line."""


class PolyrepError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ConfigError(PolyrepError, ValueError):
    exit_code = 2


class PreconditionError(PolyrepError, ValueError):
    exit_code = 3


class DomainError(PreconditionError):
    """Argument outside the mathematical domain of an operation."""


class NumericToleranceError(PolyrepError, ArithmeticError):
    exit_code = 4


class CacheError(PolyrepError, IOError):
    """Sieve cache file could not be used."""

    exit_code = 3


class CacheFormatError(CacheError):
    pass


class CacheVersionError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass
