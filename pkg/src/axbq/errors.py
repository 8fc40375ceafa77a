"""Exception types shared across the package."""


class AxbqError(Exception):
    """Base class for all errors raised by axbq."""


class InvalidIndex(AxbqError, ValueError):
    """A generator letter carries an index that is not allowed in the current mode."""


class ParseError(AxbqError, ValueError):
    pass


class DomainError(AxbqError, ValueError):
    """An operation was applied outside the subalgebra it is defined on."""


class InsufficientPrecision(AxbqError, ArithmeticError):
    """A p-adic division would consume digits that are not tracked."""


class NotPrime(AxbqError, ValueError):
    pass


class KTheoryError(AxbqError):
    pass


class ExtensionAmbiguous(KTheoryError):
    """The six-term sequence does not determine the group (outer term not free)."""


class InsufficientStages(KTheoryError):
    pass


class UncertifiedColimit(KTheoryError):
    """A colimit could not be identified with a finitely generated group from the stages seen."""
