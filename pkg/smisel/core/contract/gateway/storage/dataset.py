"""Provides an abstract base class for dataset storage gateways."""

__all__ = ["IDatasetStorageGateway"]

from abc import ABC, abstractmethod

from smisel.core.contract.dto.dataset import Dataset, TaskKind


class IDatasetStorageGateway(ABC):
    """A dataset storage base class."""

    @abstractmethod
    def load(self, path: str, task: TaskKind) -> Dataset:
        """Read a delimited text file into a dataset (features m x n)."""

    @abstractmethod
    def save(self, dataset: Dataset, path: str) -> None:
        """Write a dataset in the format read by load."""
