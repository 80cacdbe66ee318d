from typing import Iterable, List


class FuzzsimError(Exception):
    """Base class for every error raised by the toolkit."""


class UsageError(FuzzsimError, ValueError):
    """The caller passed something the operation cannot work with."""


class LatticeMismatchError(UsageError):
    pass


class LatticeValueError(UsageError):
    pass


class ShapeError(UsageError):
    pass


class UnknownLetterError(UsageError):
    pass


class AlphabetMismatchError(UsageError):
    pass


class NonCrispError(UsageError):
    pass


class OracleSizeError(UsageError):
    pass


class ConfigurationError(UsageError):
    pass


class AutomatonValidationError(UsageError):
    """Raised with every diagnostic found while validating an automaton."""

    def __init__(self, diagnostics: Iterable[str], source: str = None):
        self.diagnostics: List[str] = list(diagnostics)
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(prefix + "; ".join(self.diagnostics))


class AutomatonFileError(UsageError):
    pass
