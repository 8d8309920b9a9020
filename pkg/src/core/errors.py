"""
Hierarchia wyjątków subreg-forge.

Każdy błąd operacyjny dziedziczy po SubregError, dzięki czemu CLI może
złapać jedną klasę i zakończyć się kodem 1 z czytelnym komunikatem.
"""


class SubregError(Exception):
    """Bazowy wyjątek projektu."""


class AlphabetError(SubregError, ValueError):
    """Symbol spoza alfabetu, niezgodne alfabety lub zły rozmiar alfabetu."""


class ExpressionError(SubregError):
    """Błąd parsowania lub kompilacji wyrażenia logicznego."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (pozycja {position})"
        super().__init__(message)


class NotMinimalError(SubregError):
    """Automat przekazany do konstrukcji monoidu nie jest minimalny."""


class MonoidTooLargeError(SubregError):
    """Monoid syntaktyczny przekracza limit rozmiaru tablicy mnożenia."""


class LanguageExhaustedError(SubregError):
    """Wycięty automat nie akceptuje już żadnego słowa danej długości."""


class UnusableLanguageError(SubregError):
    """Język (lub dopełnienie) jest pusty na którejś długości benchmarku."""


class FormatError(SubregError):
    """Niepoprawny plik ATT, TSV, manifest lub plik predykcji."""


class ConfigError(SubregError):
    """Brakujący lub niepoprawny plik konfiguracyjny."""
