"""Exception types shared across fusionkit."""


class FusionKitError(Exception):
    """Base class for all fusionkit errors."""


class PermutationError(FusionKitError, ValueError):
    """Malformed permutation input (bad cycle text, point out of range, ...)."""


class DegreeMismatch(FusionKitError, ValueError):
    pass


class ElementCapExceeded(FusionKitError):
    """Raised when an enumeration would exceed the configured element cap."""

    def __init__(self, cap, what="group"):
        super().__init__(f"{what} exceeds element cap of {cap}")
        self.cap = cap


class NotASubgroup(FusionKitError, ValueError):
    pass


class NotMember(FusionKitError, ValueError):
    pass


class NotPGroup(FusionKitError, ValueError):
    pass


class NotStronglyClosed(FusionKitError):
    """The quotient by Omega_1(S) is undefined because it is not strongly closed."""


class CorpusError(FusionKitError, ValueError):
    """Corpus record could not be parsed.  ``line`` is 1-based, or None."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
