"""Provides dataclasses for benchmark configuration and trial reports."""

__all__ = [
    "AggregateCell",
    "BenchConfig",
    "DatasetSource",
    "ReportFormat",
    "SubsetScore",
    "TrialReport",
]

from dataclasses import dataclass, field
from enum import Enum

from smisel.core.contract.dto.dataset import FeatureIndexSet, TaskKind
from smisel.core.contract.error import SmiselError


class ReportFormat(str, Enum):
    """File format of an emitted report."""

    CSV = "csv"

    JSON = "json"

    MARKDOWN = "markdown"

    @property
    def suffix(self) -> str:
        """File name suffix."""
        return {"csv": ".csv", "json": ".json", "markdown": ".md"}[self.value]


@dataclass(frozen=True)
class DatasetSource:
    """A toy dataset by name, or a CSV file with its task and selection size."""

    name: str

    path: str | None = None

    task: TaskKind | None = None

    k: int | None = None

    truth: FeatureIndexSet | None = None

    @property
    def is_toy(self) -> bool:
        """Indicates a generated toy dataset."""
        return self.path is None


# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class TrialReport:
    """Outcome of running one selector on one trial dataset."""

    method: str

    dataset: str

    trial: int

    seed: int

    k: int

    selected: FeatureIndexSet

    f_measure: float | None

    wall_time: float | None = None

    error: str | None = None

    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.f_measure is not None and not 0.0 <= self.f_measure <= 1.0:
            raise SmiselError("F-measure must lie in [0, 1].")

    @property
    def failed(self) -> bool:
        """Indicates that the selector raised an error."""
        return self.error is not None


# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class BenchConfig:
    """Methods, datasets and protocol of a benchmark run."""

    methods: tuple[str, ...]

    datasets: tuple[DatasetSource, ...]

    trials: int = 10

    n: int = 400

    k: int | None = None

    parallelism: int = 1

    master_seed: int = 0

    formats: tuple[ReportFormat, ...] = (ReportFormat.CSV, ReportFormat.MARKDOWN)

    timings: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise SmiselError("A benchmark needs at least one trial.")
        if not self.methods:
            raise SmiselError("A benchmark needs at least one method.")
        if not self.datasets:
            raise SmiselError("A benchmark needs at least one dataset.")
        if self.parallelism < 1:
            raise SmiselError("Parallelism degree must be positive.")


@dataclass(frozen=True)
class AggregateCell:
    """Mean (std) F-measure of one (method, dataset) cell."""

    method: str

    dataset: str

    mean: float

    std: float

    trials: int

    failures: int


@dataclass(frozen=True)
class SubsetScore:
    """A feature subset and its LSMI value."""

    features: FeatureIndexSet

    value: float

    sigma: float = float("nan")

    lam: float = float("nan")
