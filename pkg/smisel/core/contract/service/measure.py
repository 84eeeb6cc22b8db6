"""Provides an abstract base class for dependence measure services."""

__all__ = ["IMeasureService"]

from abc import ABC, abstractmethod

import numpy as np

from smisel.core.contract.dto.dataset import Dataset, FeatureIndexSet
from smisel.core.contract.dto.bench import SubsetScore
from smisel.core.contract.dto.lsmi import (
    Basis,
    Correlation,
    CvGrid,
    HsicConfig,
    LsmiFit,
    LsmiModel,
)


class IMeasureService(ABC):
    """An ABC for dependence measures between features and a target."""

    @property
    @abstractmethod
    def grid(self) -> CvGrid:
        """Configured model selection grid."""

    @property
    @abstractmethod
    def basis_count(self) -> int:
        """Configured upper bound on the number of basis functions."""

    @abstractmethod
    def pearson(self, x: np.ndarray, y: np.ndarray) -> Correlation:
        """Sample correlation of two vectors."""

    @abstractmethod
    def hsic(self, x: np.ndarray, y: np.ndarray, cfg: HsicConfig) -> float:
        """Biased empirical HSIC of inputs (d x n) and a target."""

    @abstractmethod
    def discretize(self, x: np.ndarray, bins: int | None = None) -> np.ndarray:
        """Equal-frequency bin codes for a continuous vector."""

    @abstractmethod
    def discrete_mi(self, x: np.ndarray, y: np.ndarray) -> float:
        """Plug-in mutual information of two discrete vectors, in nats."""

    @abstractmethod
    def build_basis(
        self,
        x: np.ndarray,
        y: np.ndarray,
        b: int,
        sigma: float,
        seed: int,
        classification: bool,
    ) -> Basis:
        """Draw b distinct sample indices as kernel centres."""

    @abstractmethod
    def evaluate_basis(
        self, basis: Basis, x: np.ndarray, y: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        """Input and output factors (each b x n) of the product kernel basis."""

    @abstractmethod
    def lsmi_solve(self, H: np.ndarray, h: np.ndarray, lam: float) -> LsmiFit:
        """Solve (H + lam I) alpha = h and evaluate the LSMI value."""

    @abstractmethod
    def lsmi_fit(
        self,
        x: np.ndarray,
        y: np.ndarray,
        centers: np.ndarray,
        sigma: float,
        lam: float,
        classification: bool,
    ) -> LsmiFit:
        """Fit the density-ratio model for fixed centres, width and ridge."""

    @abstractmethod
    def lsmi_cv_select(
        self,
        x: np.ndarray,
        y: np.ndarray,
        b: int,
        grid: CvGrid,
        seed: int,
        classification: bool,
    ) -> tuple[LsmiModel, LsmiFit]:
        """Choose (sigma, lambda) by K-fold cross validation and refit."""

    @abstractmethod
    def lsmi_score(
        self, data: Dataset, subset: FeatureIndexSet, seed: int = 0
    ) -> SubsetScore:
        """LSMI of an unweighted feature subset with a cross-validated model.

        The reported value is `LsmiFit.compensated_value` of the refitted
        model, so subsets fitted with different widths compare fairly.
        """
