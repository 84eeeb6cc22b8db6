"""Provides dataclasses for selector results and baseline problem data."""

__all__ = [
    "Direction",
    "QpfsProblem",
    "SelectionResult",
    "SequentialStep",
    "SequentialTrace",
]

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from smisel.core.contract.dto.dataset import FeatureIndexSet
from smisel.core.contract.error import SelectionError


class Direction(str, Enum):
    """Direction of a sequential search."""

    FORWARD = "forward"

    BACKWARD = "backward"


@dataclass(frozen=True, eq=False)
class SelectionResult:
    """Chosen features, per-feature scores and free-form diagnostics."""

    method: str

    selected: FeatureIndexSet

    scores: np.ndarray | None = None

    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SequentialStep:
    """One greedy step: the feature added or removed and the resulting value."""

    step: int

    index: int

    value: float


@dataclass(frozen=True)
class SequentialTrace:
    """Ordered steps of a forward or backward search."""

    direction: Direction

    steps: tuple[SequentialStep, ...] = ()

    def __post_init__(self):
        indices = [s.index for s in self.steps]
        if len(set(indices)) != len(indices):
            raise SelectionError("Sequential trace indices must be distinct.")


@dataclass(frozen=True, eq=False)
class QpfsProblem:
    """Quadratic program of QPFS: redundancy Q, relevance f, trade-off alpha."""

    Q: np.ndarray

    f: np.ndarray

    alpha: float

    degenerate: np.ndarray | None = None

    def __post_init__(self):
        Q = np.asarray(self.Q, dtype=np.float64)
        f = np.asarray(self.f, dtype=np.float64)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1] or Q.shape[0] != f.shape[0]:
            raise SelectionError("QPFS needs a square Q matching f.")
        if not np.allclose(Q, Q.T):
            raise SelectionError("QPFS matrix Q must be symmetric.")
        if not 0.0 <= self.alpha <= 1.0:
            raise SelectionError("QPFS alpha must lie in [0, 1].")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "f", f)
        if self.degenerate is None:
            object.__setattr__(self, "degenerate", np.zeros(f.shape[0], dtype=bool))

    @property
    def m(self) -> int:
        """Number of features."""
        return self.f.shape[0]

    @staticmethod
    def recommended_alpha(Q: np.ndarray, f: np.ndarray) -> float:
        """Trade-off q_bar / (q_bar + f_bar)."""
        q_bar = float(np.mean(Q))
        f_bar = float(np.mean(f))
        if q_bar + f_bar == 0:
            return 0.5
        return q_bar / (q_bar + f_bar)

    def objective(self, w: np.ndarray) -> float:
        """0.5 (1 - alpha) w'Qw - alpha f'w."""
        return float(
            0.5 * (1.0 - self.alpha) * w @ self.Q @ w - self.alpha * self.f @ w
        )
