"""Exception hierarchy."""


class WordSeriesError(Exception):
    """Base class for all errors raised by the package."""


class ModeMismatchError(WordSeriesError, TypeError):
    """Exact and float coefficients were combined."""


class AlphabetMismatchError(WordSeriesError, ValueError):
    pass


class TruncationError(WordSeriesError, ValueError):
    """A word would exceed the configured truncation order."""


class NotInvertibleError(WordSeriesError, ZeroDivisionError):
    pass


class PreconditionError(WordSeriesError, ValueError):
    """An operation was called outside its domain (e.g. log of a non-character)."""


class SmallDivisorError(WordSeriesError, ArithmeticError):
    """A (near-)resonant divisor was met while solving word by word."""

    def __init__(self, word, divisor, message=None):
        self.word = tuple(word)
        self.divisor = divisor
        super().__init__(message or f"small divisor {abs(divisor):.3e} at word {self.word}")


class UnsupportedModelError(WordSeriesError, ValueError):
    pass


class IntegrationError(WordSeriesError, FloatingPointError):
    """The time integrator produced non-finite values or failed to converge."""


class ConfigError(WordSeriesError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
