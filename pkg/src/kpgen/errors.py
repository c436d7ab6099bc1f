"""Exception hierarchy shared across the toolkit."""


class KpgenError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(KpgenError):
    """Invalid configuration value (bad budget, unknown mode, ...)."""


class CorpusError(KpgenError):
    """Unrecoverable problem with an input corpus file.

    ``line`` carries the 1-based line number when the error is tied to a
    specific JSONL line.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class CodecError(KpgenError):
    """Keyphrase list cannot be serialized (e.g. empty after sanitization)."""


class EvaluationError(KpgenError):
    """Predictions and gold data cannot be aligned."""


class TransportError(KpgenError):
    """Backend request failed after exhausting retries.

    ``paragraph_index`` is attached by the pipeline when the failure can be
    tied to a specific paragraph.
    """

    def __init__(self, message: str, paragraph_index: int | None = None):
        super().__init__(message)
        self.paragraph_index = paragraph_index


class ProtocolError(KpgenError):
    """Backend answered, but the response violates the wire schema."""
