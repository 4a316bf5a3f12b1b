# weylzhu/errors.py
"""Exception hierarchy for weylzhu.

Every error raised on purpose by the package derives from WeylZhuError, so
callers can catch the whole family with one clause. Subclasses keep the
offending values as attributes.
"""


class WeylZhuError(Exception):
    """Base class for all weylzhu errors"""


class InvalidParameterError(WeylZhuError, ValueError):
    """Raised when a numeric argument is outside its allowed range"""

    def __init__(self, name, value, reason):
        self.name = name
        self.value = value
        self.reason = reason
        super().__init__(f"Invalid {self.name}={self.value!r}: {self.reason}")


class ParseError(WeylZhuError, ValueError):
    """Raised for malformed mode-word, element or rational text"""

    def __init__(self, text, position, message="unexpected input"):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {self.position} in {self.text!r}")


class GradingError(WeylZhuError):
    """Raised when an input is not homogeneous or has the wrong degree"""

    def __init__(self, operation, expected, found):
        self.operation = operation
        self.expected = expected
        self.found = set(found)
        found_text = ", ".join(str(f) for f in sorted(self.found, key=str)) or "none"
        super().__init__(
            f"{self.operation} expects {self.expected}, got degrees {{{found_text}}}"
        )


class DegenerateContractionError(WeylZhuError):
    """Raised when a contraction constant evaluates to zero"""

    def __init__(self, bipartition):
        self.bipartition = bipartition
        super().__init__(f"Contraction constant of {self.bipartition} is zero")


class WindowOverflowError(WeylZhuError):
    """Raised when a strict action or truncation leaves its window"""

    def __init__(self, exponent, window):
        self.exponent = exponent
        self.window = window
        super().__init__(
            f"Exponent {self.exponent} leaves the window {self.window}"
        )


class ConfigError(WeylZhuError):
    """Raised for invalid run configuration"""


class VerificationError(WeylZhuError):
    """Raised when one or more verification checks fail"""

    def __init__(self, failures):
        self.failures = list(failures)
        names = ", ".join(self.failures)
        super().__init__(f"{len(self.failures)} check(s) failed: {names}")
