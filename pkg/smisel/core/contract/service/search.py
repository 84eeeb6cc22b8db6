"""Provides an abstract base class for sparse feature weighting services."""

__all__ = ["ISearchService", "RadiusSolver"]

from abc import ABC, abstractmethod
from typing import Callable

import numpy as np

from smisel.core.contract.dto.dataset import Dataset, FeatureIndexSet
from smisel.core.contract.dto.lsmi import LsmiModel, OutputKernel
from smisel.core.contract.dto.search import (
    AscentConfig,
    AscentResult,
    Candidate,
    FeatureWeights,
    Measure,
    RadiusSolve,
)
from smisel.core.contract.dto.selection import SelectionResult

# (radius, seed) -> solve
RadiusSolver = Callable[[float, int], RadiusSolve]


class ISearchService(ABC):
    """An ABC for l1-ball feature weighting and the radius search."""

    @property
    @abstractmethod
    def ascent_config(self) -> AscentConfig:
        """Configured ascent and radius search settings."""

    @abstractmethod
    def project_simplex(self, v: np.ndarray, r: float) -> np.ndarray:
        """Euclidean projection onto {u >= 0, sum(u) = r}."""

    @abstractmethod
    def project_l1_positive(self, v: np.ndarray, r: float) -> np.ndarray:
        """Euclidean projection onto {u >= 0, sum(u) <= r}."""

    @abstractmethod
    def lsmi_objective_and_gradient(
        self, data: Dataset, w: FeatureWeights, model: LsmiModel
    ) -> tuple[float, np.ndarray]:
        """LSMI of the weighted inputs and its gradient in w, model held fixed."""

    @abstractmethod
    def hsic_objective_and_gradient(
        self,
        data: Dataset,
        w: FeatureWeights,
        width: float,
        output_kernel: OutputKernel,
    ) -> tuple[float, np.ndarray]:
        """HSIC of the weighted inputs and its gradient in w, width held fixed."""

    @abstractmethod
    def ascend(
        self,
        data: Dataset,
        w0: FeatureWeights,
        cfg: AscentConfig,
        measure: Measure,
        seed: int = 0,
    ) -> AscentResult:
        """Projected gradient ascent from w0 with periodic model selection."""

    @abstractmethod
    def extract_support(self, w: FeatureWeights, eps: float) -> FeatureIndexSet:
        """Features whose weight exceeds eps times the largest weight."""

    @abstractmethod
    def solve_radius(
        self,
        data: Dataset,
        r: float,
        cfg: AscentConfig,
        measure: Measure,
        seed: int = 0,
    ) -> RadiusSolve:
        """Best of several random restarts for one l1 radius."""

    @abstractmethod
    def rank_candidates(self, tried: list[Candidate], k: int) -> list[Candidate]:
        """Order candidates by closeness to k, smaller size, then value."""

    @abstractmethod
    def search_k_features(  # pylint: disable=too-many-arguments
        self,
        data: Dataset,
        k: int,
        cfg: AscentConfig,
        measure: Measure,
        seed: int = 0,
        solver: RadiusSolver | None = None,
    ) -> SelectionResult:
        """Search the l1 radius for a support of exactly k features."""
