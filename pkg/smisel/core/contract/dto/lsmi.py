"""Provides dataclasses for dependence-measure models and model selection."""

__all__ = [
    "Basis",
    "Correlation",
    "CvGrid",
    "HsicConfig",
    "LsmiFit",
    "LsmiModel",
    "OutputKernel",
]

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from smisel.core.contract.error import SmiselError


class Correlation(NamedTuple):
    """Pearson correlation and whether an input was constant."""

    value: float

    degenerate: bool = False


class OutputKernel(str, Enum):
    """Kernel applied to the target."""

    GAUSSIAN = "gaussian"

    DELTA = "delta"


@dataclass(frozen=True)
class HsicConfig:
    """Kernel configuration for the empirical HSIC."""

    width_x: float

    output_kernel: OutputKernel = OutputKernel.DELTA

    width_y: float = 1.0

    def __post_init__(self):
        if self.width_x <= 0 or self.width_y <= 0:
            raise SmiselError("HSIC kernel widths must be positive.")


@dataclass(frozen=True)
class CvGrid:
    """Candidate (sigma, lambda) grid for K-fold model selection."""

    sigma_scales: tuple[float, ...] = (0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.5, 2.0)

    lambdas: tuple[float, ...] = (1e-3, 1e-2, 1e-1, 1.0)

    folds: int = 5

    def __post_init__(self):
        scales = tuple(float(s) for s in self.sigma_scales)
        object.__setattr__(self, "sigma_scales", scales)
        object.__setattr__(self, "lambdas", tuple(float(v) for v in self.lambdas))
        if not self.sigma_scales or not self.lambdas:
            raise SmiselError("CV grid lists must be nonempty.")
        if min(self.sigma_scales) <= 0 or min(self.lambdas) <= 0:
            raise SmiselError("CV grid values must be positive.")
        if self.folds < 2:
            raise SmiselError("CV needs at least two folds.")


@dataclass(frozen=True, eq=False)
class Basis:
    """Product-kernel basis: sample-index centres, width and task."""

    centers: np.ndarray

    sigma: float

    classification: bool

    @property
    def b(self) -> int:
        """Number of basis functions."""
        return int(self.centers.shape[0])


@dataclass(frozen=True, eq=False)
class LsmiFit:
    """Empirical H, h, ridge solution and the LSMI value."""

    H: np.ndarray

    h: np.ndarray

    alpha: np.ndarray

    value: float

    # lambda * |alpha|^2 / 2 at the solution.
    penalty: float = 0.0

    @property
    def compensated_value(self) -> float:
        """LSMI with the ridge penalty added back.

        Equals h.alpha - alpha.H.alpha / 2 - 1/2. Shrinkage lowers it only to
        second order, so values of models fitted with different widths and
        ridge strengths stay comparable.
        """
        return self.value + self.penalty


@dataclass(frozen=True, eq=False)
class LsmiModel:
    """A fitted density-ratio model."""

    centers: np.ndarray

    sigma: float

    lam: float

    alpha: np.ndarray

    cv_score: float = float("nan")

    @property
    def b(self) -> int:
        """Number of basis functions."""
        return int(self.centers.shape[0])

    def __post_init__(self):
        if self.sigma <= 0 or self.lam <= 0:
            raise SmiselError("LSMI model needs positive sigma and lambda.")
        if np.unique(self.centers).shape[0] != self.centers.shape[0]:
            raise SmiselError("LSMI basis centres must be distinct.")
