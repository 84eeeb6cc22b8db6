"""Provides dataclasses for l1-ball feature weighting and the radius search."""

__all__ = [
    "AscentConfig",
    "AscentResult",
    "Candidate",
    "FeatureWeights",
    "Measure",
    "RadiusSearchState",
    "RadiusSolve",
]

from dataclasses import dataclass, field
from enum import Enum
import time

import numpy as np

from smisel.core.contract.dto.dataset import FeatureIndexSet
from smisel.core.contract.error import SearchError


class Measure(str, Enum):
    """Dependence measure maximised by a search."""

    LSMI = "lsmi"

    HSIC = "hsic"


@dataclass(frozen=True, eq=False)
class FeatureWeights:
    """Nonnegative feature weights inside the l1-ball of radius r."""

    w: np.ndarray

    r: float

    def __post_init__(self):
        w = np.array(self.w, dtype=np.float64)
        if self.r <= 0:
            raise SearchError("The l1 radius must be positive.")
        if np.any(w < 0) or w.sum() > self.r + 1e-9:
            raise SearchError(
                f"Weights infeasible for radius {self.r} (sum {w.sum():.6g})."
            )
        w.setflags(write=False)
        object.__setattr__(self, "w", w)


# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class AscentConfig:
    """Projected gradient ascent and radius search settings."""

    max_iters: int = 50

    step0: float = 0.5

    model_select_period: int = 5

    tol: float = 1e-5

    restarts: int = 20

    nonzero_eps: float = 1e-6

    max_solves: int = 30

    # Wall clock limit of one radius search. None means only max_solves applies.
    max_seconds: float | None = None

    def __post_init__(self):
        if min(self.max_iters, self.model_select_period, self.restarts) < 1:
            raise SearchError("Iteration counts must be positive.")
        if min(self.step0, self.tol, self.nonzero_eps) <= 0:
            raise SearchError("Step size and thresholds must be positive.")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise SearchError("The time budget must be positive when set.")
        if self.max_solves < 1:
            raise SearchError("The radius search needs at least one solve.")


@dataclass(frozen=True, eq=False)
class AscentResult:
    """Best iterate of one projected gradient ascent."""

    weights: FeatureWeights

    value: float

    trace: tuple[float, ...]

    iterations: int

    model: object = None


@dataclass(frozen=True, eq=False)
class RadiusSolve:
    """Outcome of solving the weighting problem for one radius."""

    r: float

    weights: FeatureWeights | None

    support: FeatureIndexSet

    value: float

    restart: int = 0


@dataclass(frozen=True)
class Candidate:
    """A support found for radius r and its subset value."""

    r: float

    support: FeatureIndexSet

    value: float


@dataclass
class RadiusSearchState:
    """Bracket, history and budget of the radius binary search."""

    max_solves: int

    max_seconds: float | None = None

    r_low: float = 0.0

    r_high: float = float("inf")

    tried: list[Candidate] = field(default_factory=list)

    solves: int = 0

    started: float = field(default_factory=time.monotonic)

    @property
    def exhausted(self) -> bool:
        """Indicates that the solve count or wall clock budget is spent."""
        if self.solves >= self.max_solves:
            return True
        return (
            self.max_seconds is not None
            and time.monotonic() - self.started >= self.max_seconds
        )

    def record(self, candidate: Candidate) -> None:
        """Count a solve and keep its candidate if the value is finite."""
        self.solves += 1
        if np.isfinite(candidate.value):
            self.tried.append(candidate)
