"""Provides an abstract base class for benchmark services."""

__all__ = ["IBenchService", "METHODS"]

from abc import ABC, abstractmethod

from smisel.core.contract.dto.bench import (
    AggregateCell,
    BenchConfig,
    ReportFormat,
    SubsetScore,
    TrialReport,
)
from smisel.core.contract.dto.dataset import Dataset, FeatureIndexSet
from smisel.core.contract.dto.selection import SelectionResult

METHODS = (
    "l1lsmi",
    "l1hsic",
    "pc",
    "fhsic",
    "bhsic",
    "flsmi",
    "blsmi",
    "mrmr",
    "qpfs",
    "lasso",
    "relieff",
)


class IBenchService(ABC):
    """An ABC for selector dispatch, scoring and repeated-trial benchmarks."""

    @abstractmethod
    def bench_config(self) -> BenchConfig:
        """Benchmark configuration read from the application configuration."""

    @abstractmethod
    def f_measure(self, selected: FeatureIndexSet, truth: FeatureIndexSet) -> float:
        """Harmonic mean of selection precision and recall."""

    @abstractmethod
    def select(
        self, data: Dataset, method: str, k: int, seed: int = 0
    ) -> SelectionResult:
        """Run a named selector on standardized data."""

    @abstractmethod
    async def run_benchmark(
        self, cfg: BenchConfig
    ) -> tuple[list[TrialReport], list[AggregateCell]]:
        """Run every (method, dataset, trial) and aggregate the F-measures."""

    @abstractmethod
    def aggregate(
        self, reports: list[TrialReport], cfg: BenchConfig | None = None
    ) -> list[AggregateCell]:
        """Mean (std) F-measure and failure count per (method, dataset)."""

    @abstractmethod
    def enumerate_andor_lsmi(self, n: int, seed: int) -> list[SubsetScore]:
        """LSMI of every 4-subset of the and-or true and redundant features."""

    @abstractmethod
    def emit_report(
        self,
        reports: list[TrialReport],
        fmt: ReportFormat,
        path: str,
        cfg: BenchConfig | None = None,
    ) -> str:
        """Write reports in the requested format."""

    @abstractmethod
    def load_reports(self, path: str) -> list[TrialReport]:
        """Read a CSV report back."""
