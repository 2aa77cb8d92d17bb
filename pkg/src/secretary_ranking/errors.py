"""Exception types raised across the package."""


class RankingError(Exception):
    """Base class for all package errors."""


class InvalidDimensions(RankingError, ValueError):
    pass


class DuplicateKey(RankingError, KeyError):
    pass


class EmptySet(RankingError, LookupError):
    pass


class NotFree(RankingError, KeyError):
    pass


class DomainError(RankingError, ValueError):
    pass


class PreconditionViolation(RankingError, ValueError):
    pass


class NoSolution(RankingError, ArithmeticError):
    pass


class DegenerateInput(RankingError, ValueError):
    pass


class ConfigError(RankingError, ValueError):
    pass
