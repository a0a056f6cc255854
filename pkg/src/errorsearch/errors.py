"""Exception hierarchy shared by every errorsearch module."""


class ErrorSearchError(Exception):
    """Base class for all errors raised by errorsearch."""


class NoTraceFound(ErrorSearchError, ValueError):
    """Raised when text contains neither stack frames nor exception headers."""


class OutOfRange(ErrorSearchError, IndexError):
    """Raised for a stack frame position outside ``1..frame_count``."""


class MalformedDocument(ErrorSearchError, ValueError):
    """Raised when no textual content can be recovered from an HTML page."""


class InvalidRank(ErrorSearchError, ValueError):
    """Raised for a non-positive popularity rank."""


class InvalidWeights(ErrorSearchError, ValueError):
    """Raised when a weight configuration violates its sum constraints."""


class QueryValidationError(ErrorSearchError, ValueError):
    """Raised when an exception query has a forbidden mode/field combination."""


class UnknownProvider(ErrorSearchError, KeyError):
    """Raised when a search is requested from a provider that is not registered."""

    def __str__(self):
        return f"provider not registered: {self.args[0]!r}"


class ProviderUnavailable(ErrorSearchError):
    """Raised by a provider that cannot answer (network failure, quota, ...)."""

    def __init__(self, provider: str, reason: str):
        super().__init__(f"{provider}: {reason}")
        self.provider = provider
        self.reason = reason


class FetchError(ErrorSearchError):
    """Raised when a result page cannot be retrieved."""


class EmptyCorpus(ErrorSearchError):
    """Raised when no result page survives corpus construction."""

    def __init__(self, message: str, warnings: list[str] | None = None):
        super().__init__(message)
        self.warnings = list(warnings or [])


class AllProvidersFailed(EmptyCorpus):
    """Raised when every requested provider failed to return results."""
