"""Provides an abstract base class for dataspace services."""

__all__ = ["IDataspaceService"]

from abc import ABC, abstractmethod

import numpy as np

from smisel.core.contract.dto.dataset import (
    Dataset,
    FeatureIndexSet,
    Standardization,
    TaskKind,
    ToySpec,
)


class IDataspaceService(ABC):
    """An ABC for dataset ingestion, preparation and generation."""

    @abstractmethod
    def load_csv(self, path: str, task: TaskKind) -> Dataset:
        """Load a dataset whose last column is the target."""

    @abstractmethod
    def save_csv(self, dataset: Dataset, path: str) -> None:
        """Write a dataset so that load_csv reproduces it."""

    @abstractmethod
    def standardize(self, data: Dataset) -> tuple[Dataset, Standardization]:
        """Scale every feature row to zero mean and unit variance."""

    @abstractmethod
    def generate_toy(self, spec: ToySpec) -> tuple[Dataset, FeatureIndexSet]:
        """Generate a toy dataset and its true feature set."""

    @abstractmethod
    def median_pairwise_distance(self, points: np.ndarray) -> float:
        """Median Euclidean distance between the columns of a d x n matrix."""
