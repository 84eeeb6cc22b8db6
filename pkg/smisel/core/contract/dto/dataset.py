"""Provides dataclasses for datasets, feature index sets and toy specifications."""

__all__ = [
    "Dataset",
    "FeatureIndexSet",
    "Standardization",
    "Task",
    "TaskKind",
    "ToySpec",
]

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

from smisel.core.contract.error import DatasetError


class TaskKind(str, Enum):
    """Kind of learning task a dataset describes."""

    REGRESSION = "regression"

    CLASSIFICATION = "classification"


@dataclass(frozen=True)
class Task:
    """A task kind, with the class count for classification."""

    kind: TaskKind

    n_classes: int = 0

    @classmethod
    def regression(cls) -> "Task":
        """Regression task."""
        return cls(TaskKind.REGRESSION)

    @classmethod
    def classification(cls, n_classes: int) -> "Task":
        """C-class classification task."""
        return cls(TaskKind.CLASSIFICATION, n_classes)

    @classmethod
    def parse(cls, name: str) -> TaskKind:
        """Map a CLI/config task name to a task kind."""
        match name.lower():
            case "reg" | "regression":
                return TaskKind.REGRESSION
            case "class" | "classification":
                return TaskKind.CLASSIFICATION
        raise DatasetError(f"Unknown task kind: {name}.")

    @property
    def is_classification(self) -> bool:
        """Indicates a classification task."""
        return self.kind == TaskKind.CLASSIFICATION

    def __post_init__(self):
        if self.is_classification and self.n_classes < 1:
            raise DatasetError("Classification task needs at least one class.")


@dataclass(frozen=True)
class FeatureIndexSet:
    """A sorted set of 1-based feature indices."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        if any(i < 1 for i in indices):
            raise DatasetError("Feature indices are 1-based.")
        if list(indices) != sorted(set(indices)):
            raise DatasetError("Feature indices must be sorted and unique.")
        object.__setattr__(self, "indices", indices)

    @classmethod
    def of(cls, indices: Iterable[int], m: int | None = None) -> "FeatureIndexSet":
        """Build a set from 1-based indices, checking the range when m is given."""
        values = sorted({int(i) for i in indices})
        if m is not None and values and values[-1] > m:
            raise DatasetError(f"Feature index {values[-1]} out of range 1..{m}.")
        return cls(tuple(values))

    @classmethod
    def from_positions(cls, positions: Iterable[int]) -> "FeatureIndexSet":
        """Build a set from 0-based array positions."""
        return cls.of(int(p) + 1 for p in positions)

    @classmethod
    def parse(cls, text: str) -> "FeatureIndexSet":
        """Parse a comma or semicolon separated index list."""
        parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
        try:
            return cls.of(int(p) for p in parts)
        except ValueError as e:
            raise DatasetError(f"Invalid feature list: {text}.") from e

    @property
    def positions(self) -> np.ndarray:
        """0-based positions for array indexing."""
        return np.asarray(self.indices, dtype=np.intp) - 1

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __contains__(self, index: object) -> bool:
        return index in self.indices

    def __and__(self, other: "FeatureIndexSet") -> "FeatureIndexSet":
        return FeatureIndexSet(tuple(sorted(set(self.indices) & set(other.indices))))

    def __str__(self) -> str:
        return ";".join(str(i) for i in self.indices)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature matrix (m features x n samples), target vector and task."""

    features: np.ndarray

    target: np.ndarray

    task: Task

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64)
        if features.ndim != 2:
            raise DatasetError("Features must be a 2-d matrix (m x n).")
        target = np.array(self.target)
        if target.ndim != 1 or target.shape[0] != features.shape[1]:
            raise DatasetError(
                f"Target length {target.shape[0] if target.ndim else 0} does not"
                f" match sample count {features.shape[1]}."
            )
        if not np.all(np.isfinite(features)):
            raise DatasetError("Features contain non-finite values.")

        if self.task.is_classification:
            if not np.all(np.equal(np.mod(target, 1), 0)):
                raise DatasetError("Class labels must be integers.")
            target = target.astype(np.int64)
            if target.size and (
                target.min() < 1 or target.max() > self.task.n_classes
            ):
                raise DatasetError(
                    f"Class labels must lie in 1..{self.task.n_classes}."
                )
        else:
            target = target.astype(np.float64)
            if not np.all(np.isfinite(target)):
                raise DatasetError("Target contains non-finite values.")

        features.setflags(write=False)
        target.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "target", target)

    @property
    def m(self) -> int:
        """Number of features."""
        return self.features.shape[0]

    @property
    def n(self) -> int:
        """Number of samples."""
        return self.features.shape[1]

    def restrict(self, subset: FeatureIndexSet) -> "Dataset":
        """Dataset with only the features in subset, in index order."""
        return Dataset(self.features[subset.positions], self.target, self.task)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.task == other.task
            and self.features.shape == other.features.shape
            and np.array_equal(self.features, other.features)
            and np.array_equal(self.target, other.target)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Standardization:
    """Per-feature statistics recorded by standardization."""

    mean: np.ndarray

    std: np.ndarray

    zero_variance: np.ndarray

    target_mean: float = 0.0

    target_std: float = 1.0

    convention: str = "population"


@dataclass(frozen=True)
class ToySpec:
    """Name, sample count and seed of a generated toy dataset."""

    name: str

    n: int

    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DatasetError("Toy datasets need at least one sample.")
