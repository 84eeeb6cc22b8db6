"""Provides an implementation of IDataspaceService."""

__all__ = ["DefaultDataspaceService"]

from types import SimpleNamespace

import numpy as np
from scipy.spatial.distance import pdist

from smisel.core.contract.dto.dataset import (
    Dataset,
    FeatureIndexSet,
    Standardization,
    Task,
    TaskKind,
    ToySpec,
)
from smisel.core.contract.error import DatasetError
from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.gateway.storage.dataset import IDatasetStorageGateway
from smisel.core.contract.service.dataspace import IDataspaceService
from smisel_util.random import generator

TOY_NAMES = ("and-or", "quad", "xor")

# Standard deviations at or below this are treated as constant features.
ZERO_VARIANCE = 1e-12


class DefaultDataspaceService(IDataspaceService):
    """The default implementation of IDataspaceService."""

    def __init__(
        self,
        config: SimpleNamespace,
        dataset_storage_gateway: IDatasetStorageGateway,
        logging_gateway: ILoggingGateway,
    ) -> None:
        self._config = config
        self._dataset_storage_gateway = dataset_storage_gateway
        self._logging_gateway = logging_gateway

    def load_csv(self, path: str, task: TaskKind) -> Dataset:
        return self._dataset_storage_gateway.load(path, task)

    def save_csv(self, dataset: Dataset, path: str) -> None:
        self._dataset_storage_gateway.save(dataset, path)

    def standardize(self, data: Dataset) -> tuple[Dataset, Standardization]:
        X = data.features
        mean = X.mean(axis=1)
        std = X.std(axis=1)
        zero_variance = std <= ZERO_VARIANCE * np.maximum(1.0, np.abs(mean))

        scale = np.where(zero_variance, 1.0, std)
        Z = (X - mean[:, None]) / scale[:, None]
        Z[zero_variance] = 0.0
        if zero_variance.any():
            flagged = FeatureIndexSet.from_positions(np.flatnonzero(zero_variance))
            self._logging_gateway.warning(
                f"Zero-variance features kept as zeros: {flagged}."
            )

        target = data.target
        target_mean, target_std = 0.0, 1.0
        if not data.task.is_classification:
            target_mean = float(target.mean())
            target_std = float(target.std())
            if target_std > ZERO_VARIANCE * max(1.0, abs(target_mean)):
                target = (target - target_mean) / target_std
            else:
                target = target - target_mean
                target_std = 1.0

        stats = Standardization(
            mean=mean,
            std=std,
            zero_variance=zero_variance,
            target_mean=target_mean,
            target_std=target_std,
        )
        return Dataset(Z, target, data.task), stats

    def generate_toy(self, spec: ToySpec) -> tuple[Dataset, FeatureIndexSet]:
        rng = generator(spec.seed)
        n = spec.n
        match spec.name:
            case "and-or":
                X = np.empty((10, n))
                X[:7] = rng.binomial(1, 0.5, size=(7, n))
                y = np.logical_or(
                    np.logical_and(X[0], X[1]), np.logical_and(X[2], X[3])
                ).astype(np.float64)
                flips = rng.binomial(1, 0.2, size=(3, n))
                X[7:] = np.abs(y[None, :] - flips)
                return (
                    Dataset(X, y + 1, Task.classification(2)),
                    FeatureIndexSet((1, 2, 3, 4)),
                )
            case "quad":
                X = np.empty((10, n))
                X[:8] = rng.standard_normal((8, n))
                noise = rng.standard_normal(n)
                X[8] = 0.5 * X[0] + rng.uniform(-1.0, 1.0, n)
                X[9] = 0.5 * X[1] + rng.uniform(-1.0, 1.0, n)
                y = (X[0] ** 2 + X[1]) / (0.5 + (X[1] + 1.5) ** 2) + 0.1 * noise
                return Dataset(X, y, Task.regression()), FeatureIndexSet((1, 2))
            case "xor":
                X = np.empty((10, n))
                X[:5] = rng.binomial(1, 0.5, size=(5, n))
                X[5:] = rng.binomial(1, 0.75, size=(5, n))
                y = np.logical_xor(X[0], X[1]).astype(np.float64)
                return (
                    Dataset(X, y + 1, Task.classification(2)),
                    FeatureIndexSet((1, 2)),
                )
        raise DatasetError(
            f"Unknown toy dataset: {spec.name}"
            f" (expected one of {', '.join(TOY_NAMES)})."
        )

    def median_pairwise_distance(self, points: np.ndarray) -> float:
        points = np.asarray(points, dtype=np.float64)
        if points.ndim == 1:
            points = points[None, :]
        if points.shape[1] < 2:
            raise DatasetError("Median pairwise distance needs at least two points.")
        return float(np.median(pdist(points.T)))
