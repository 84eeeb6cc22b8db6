"""Provides the exception hierarchy raised by smisel services and gateways."""

__all__ = [
    "DatasetError",
    "DatasetParseError",
    "ModelFitError",
    "ReportError",
    "SearchError",
    "SelectionError",
    "SmiselError",
]


class SmiselError(ValueError):
    """Base class for all smisel errors."""


class DatasetError(SmiselError):
    """Raised when a dataset violates its invariants."""


class DatasetParseError(DatasetError):
    """Raised when a CSV file cannot be parsed into a dataset."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ModelFitError(SmiselError):
    """Raised when a density-ratio or weight fit produces non-finite values."""

    def __init__(self, message: str, diagnostics: dict | None = None) -> None:
        self.diagnostics = diagnostics or {}
        if self.diagnostics:
            details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
            message = f"{message} ({details})"
        super().__init__(message)


class SearchError(SmiselError):
    """Raised when the sparse search cannot produce a feature subset."""


class SelectionError(SmiselError):
    """Raised when a baseline selector cannot be applied."""


class ReportError(SmiselError):
    """Raised when a benchmark report cannot be written or read."""
