class TrainerError(Exception):
    """Base class for everything this package raises on purpose."""


class ConfigError(TrainerError):
    pass


class PairsFormatError(TrainerError):
    """A training pairs file failed validation.

    Carries the 1-based line number so the offending record can be fixed
    rather than silently skipped: training data must be exact.
    """

    def __init__(self, path, line_number: int, reason: str):
        self.path = str(path)
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"{self.path}, line {line_number}: {reason}")
