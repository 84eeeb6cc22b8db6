"""Provides an abstract base class for baseline feature selectors."""

__all__ = ["IBaselineService"]

from abc import ABC, abstractmethod

import numpy as np

from smisel.core.contract.dto.dataset import Dataset
from smisel.core.contract.dto.search import Measure
from smisel.core.contract.dto.selection import (
    Direction,
    QpfsProblem,
    SelectionResult,
    SequentialTrace,
)


class IBaselineService(ABC):
    """An ABC for the comparison selectors."""

    @abstractmethod
    def rank_pearson(self, data: Dataset, k: int) -> SelectionResult:
        """Top-k features by absolute correlation with the target."""

    @abstractmethod
    def relieff(
        self, data: Dataset, k: int, neighbors: int | None = None
    ) -> SelectionResult:
        """Top-k features by ReliefF score."""

    @abstractmethod
    def sequential_search(
        self,
        data: Dataset,
        k: int,
        direction: Direction,
        measure: Measure,
        seed: int = 0,
    ) -> tuple[SelectionResult, SequentialTrace]:
        """Greedy forward or backward search under a dependence measure."""

    @abstractmethod
    def mrmr(self, data: Dataset, k: int) -> SelectionResult:
        """Minimum redundancy maximum relevance selection."""

    @abstractmethod
    def qpfs_problem(self, data: Dataset, alpha: float | None = None) -> QpfsProblem:
        """Build the QPFS program, with the recommended alpha unless given."""

    @abstractmethod
    def qpfs_solve(self, problem: QpfsProblem) -> np.ndarray:
        """Minimise the QPFS objective over the unit simplex."""

    @abstractmethod
    def qpfs(
        self, data: Dataset, k: int, alpha: float | None = None
    ) -> SelectionResult:
        """Top-k features by QPFS weight."""

    @abstractmethod
    def lasso_fit(
        self,
        x: np.ndarray,
        y: np.ndarray,
        lam: float,
        w0: np.ndarray | None = None,
    ) -> np.ndarray:
        """Coordinate descent solution of min ||y - w'x||^2 + lam ||w||_1."""

    @abstractmethod
    def lasso_select(self, data: Dataset, k: int) -> SelectionResult:
        """Lasso support of size k found by bisection on lambda."""
