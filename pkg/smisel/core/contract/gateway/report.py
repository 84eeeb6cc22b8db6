"""Provides an abstract base class for benchmark report gateways."""

__all__ = ["IReportGateway"]

from abc import ABC, abstractmethod

from smisel.core.contract.dto.bench import AggregateCell, ReportFormat, TrialReport


class IReportGateway(ABC):
    """A report output base class."""

    @abstractmethod
    def emit(
        self,
        reports: list[TrialReport],
        cells: list[AggregateCell],
        fmt: ReportFormat,
        path: str,
        timings: bool = True,
    ) -> str:
        """Write reports (or their aggregate grid) to path and return the path."""

    @abstractmethod
    def load(self, path: str) -> list[TrialReport]:
        """Parse a CSV report written by emit."""
