"""Provides an implementation of IBaselineService."""

__all__ = ["DefaultBaselineService", "soft_threshold"]

from types import SimpleNamespace
from typing import Callable

import numpy as np
from sklearn.neighbors import KDTree

from smisel.core.contract.dto.dataset import Dataset, FeatureIndexSet, TaskKind
from smisel.core.contract.dto.lsmi import HsicConfig, OutputKernel
from smisel.core.contract.dto.search import Measure
from smisel.core.contract.dto.selection import (
    Direction,
    QpfsProblem,
    SelectionResult,
    SequentialStep,
    SequentialTrace,
)
from smisel.core.contract.error import SelectionError
from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.service.baseline import IBaselineService
from smisel.core.contract.service.dataspace import IDataspaceService
from smisel.core.contract.service.measure import IMeasureService
from smisel.core.contract.service.search import ISearchService
from smisel_util.decorator import (
    binary_or_regression_required,
    k_in_range,
    task_required,
)
from smisel_util.setting import lookup

CATEGORICAL_CORRELATIONS = ("max-onehot", "label")


def soft_threshold(x: float, t: float) -> float:
    """sign(x) * max(|x| - t, 0)."""
    return float(np.sign(x) * max(abs(x) - t, 0.0))


def _top_k(keys: list[tuple], k: int) -> FeatureIndexSet:
    """Positions of the k smallest sort keys; every key ends with the position."""
    return FeatureIndexSet.from_positions(key[-1] for key in sorted(keys)[:k])


# pylint: disable=too-many-instance-attributes
class DefaultBaselineService(IBaselineService):
    """The default implementation of IBaselineService."""

    def __init__(  # pylint: disable=too-many-arguments
        self,
        config: SimpleNamespace,
        dataspace_service: IDataspaceService,
        measure_service: IMeasureService,
        search_service: ISearchService,
        logging_gateway: ILoggingGateway,
    ) -> None:
        self._config = config
        self._dataspace_service = dataspace_service
        self._measure_service = measure_service
        self._search_service = search_service
        self._logging_gateway = logging_gateway

        self._relieff_neighbors = int(
            lookup(config, "smisel.baseline.relieff_neighbors", 10)
        )
        self._categorical_correlation = str(
            lookup(config, "smisel.baseline.categorical_correlation", "max-onehot")
        )
        if self._categorical_correlation not in CATEGORICAL_CORRELATIONS:
            raise SelectionError(
                f"Unknown categorical correlation: {self._categorical_correlation}."
            )
        self._qpfs_max_iters = int(
            lookup(config, "smisel.baseline.qpfs_max_iters", 10000)
        )
        self._qpfs_tol = float(lookup(config, "smisel.baseline.qpfs_tol", 1e-8))
        self._lasso_bisections = int(
            lookup(config, "smisel.baseline.lasso_bisections", 50)
        )

    def relevance(self, data: Dataset) -> tuple[np.ndarray, np.ndarray]:
        """Absolute target correlation of every feature and its degenerate flag."""
        targets = [data.target.astype(np.float64)]
        if (
            data.task.is_classification
            and self._categorical_correlation == "max-onehot"
        ):
            targets = [
                (data.target == c).astype(np.float64)
                for c in range(1, data.task.n_classes + 1)
            ]

        scores = np.zeros(data.m)
        degenerate = np.zeros(data.m, dtype=bool)
        for i, x in enumerate(data.features):
            correlations = [self._measure_service.pearson(x, t) for t in targets]
            degenerate[i] = all(c.degenerate for c in correlations)
            scores[i] = max(abs(c.value) for c in correlations)
        return scores, degenerate

    @k_in_range()
    def rank_pearson(self, data: Dataset, k: int) -> SelectionResult:
        scores, degenerate = self.relevance(data)
        keys = [(bool(degenerate[i]), -scores[i], i) for i in range(data.m)]
        return SelectionResult(
            method="pc",
            selected=_top_k(keys, k),
            scores=scores,
            diagnostics={
                "degenerate": FeatureIndexSet.from_positions(np.flatnonzero(degenerate))
            },
        )

    # pylint: disable=too-many-locals
    @k_in_range()
    @task_required(TaskKind.CLASSIFICATION, "ReliefF")
    def relieff(
        self, data: Dataset, k: int, neighbors: int | None = None
    ) -> SelectionResult:
        neighbors = self._relieff_neighbors if neighbors is None else neighbors
        if neighbors < 1:
            raise SelectionError("ReliefF needs at least one neighbour.")

        X = data.features.T
        span = X.max(axis=0) - X.min(axis=0)
        Z = np.divide(X - X.min(axis=0), span, out=np.zeros_like(X), where=span > 0)
        y = data.target
        n = data.n

        classes = [c for c in range(1, data.task.n_classes + 1) if np.any(y == c)]
        members = {c: np.flatnonzero(y == c) for c in classes}
        priors = {c: members[c].shape[0] / n for c in classes}
        smallest = min(members[c].shape[0] for c in classes)
        usable = min(neighbors, smallest - 1) if len(classes) > 1 else neighbors
        if usable < 1:
            raise SelectionError("ReliefF needs at least two samples in every class.")
        if usable < neighbors:
            self._logging_gateway.warning(
                f"ReliefF neighbours clamped from {neighbors} to {usable}."
            )
        trees = {c: KDTree(Z[members[c]], metric="manhattan") for c in classes}

        weights = np.zeros(data.m)
        for i in range(n):
            own = int(y[i])
            hit_rows = trees[own].query(
                Z[i : i + 1],
                k=min(usable + 1, members[own].shape[0]),
                return_distance=False,
            )[0]
            hits = [j for j in members[own][hit_rows] if j != i][:usable]
            weights -= np.abs(Z[hits] - Z[i]).sum(axis=0) / (n * usable)

            for c in classes:
                if c == own:
                    continue
                miss_rows = trees[c].query(
                    Z[i : i + 1], k=usable, return_distance=False
                )[0]
                misses = members[c][miss_rows]
                weights += (
                    priors[c] / (1.0 - priors[own])
                    * np.abs(Z[misses] - Z[i]).sum(axis=0)
                    / (n * usable)
                )

        keys = [(-weights[i], i) for i in range(data.m)]
        return SelectionResult(
            method="relieff",
            selected=_top_k(keys, k),
            scores=weights,
            diagnostics={"neighbors": usable},
        )

    def subset_measure(
        self, data: Dataset, measure: Measure, seed: int = 0
    ) -> Callable[[list[int]], float]:
        """Evaluator of a measure on feature subsets given as 0-based positions."""
        if measure == Measure.LSMI:

            def evaluate(positions: list[int]) -> float:
                subset = FeatureIndexSet.from_positions(positions)
                return self._measure_service.lsmi_score(data, subset, seed).value

            return evaluate

        y = data.target
        if data.task.is_classification:
            kernel, width_y = OutputKernel.DELTA, 1.0
        else:
            kernel = OutputKernel.GAUSSIAN
            width_y = (
                self._dataspace_service.median_pairwise_distance(y[None, :]) or 1.0
            )

        def evaluate(positions: list[int]) -> float:
            x = data.features[sorted(positions)]
            width = self._dataspace_service.median_pairwise_distance(x) or 1.0
            return self._measure_service.hsic(x, y, HsicConfig(width, kernel, width_y))

        return evaluate

    @k_in_range()
    def sequential_search(
        self,
        data: Dataset,
        k: int,
        direction: Direction,
        measure: Measure,
        seed: int = 0,
    ) -> tuple[SelectionResult, SequentialTrace]:
        evaluate = self.subset_measure(data, measure, seed)
        steps = []
        if direction == Direction.FORWARD:
            chosen: list[int] = []
            while len(chosen) < k:
                candidates = [i for i in range(data.m) if i not in chosen]
                values = [evaluate(chosen + [i]) for i in candidates]
                pick = int(np.argmax(values))
                added = candidates[pick]
                chosen.append(added)
                steps.append(SequentialStep(len(steps) + 1, added + 1, values[pick]))
                self._logging_gateway.debug(
                    f"Forward {measure.value} step {len(steps)}: +{added + 1}"
                    f" ({values[pick]:.6g})."
                )
            remaining = chosen
        else:
            remaining = list(range(data.m))
            while len(remaining) > k:
                values = [
                    evaluate([j for j in remaining if j != i]) for i in remaining
                ]
                pick = int(np.argmax(values))
                dropped = remaining.pop(pick)
                steps.append(SequentialStep(len(steps) + 1, dropped + 1, values[pick]))
                self._logging_gateway.debug(
                    f"Backward {measure.value} step {len(steps)}: -{dropped + 1}"
                    f" ({values[pick]:.6g})."
                )

        trace = SequentialTrace(direction=direction, steps=tuple(steps))
        result = SelectionResult(
            method=f"{'f' if direction == Direction.FORWARD else 'b'}{measure.value}",
            selected=FeatureIndexSet.from_positions(remaining),
            diagnostics={"trace": [(s.step, s.index, s.value) for s in steps]},
        )
        return result, trace

    @k_in_range()
    def mrmr(self, data: Dataset, k: int) -> SelectionResult:
        codes = [self._measure_service.discretize(x) for x in data.features]
        if data.task.is_classification:
            target = data.target
        else:
            target = self._measure_service.discretize(data.target)

        relevance = np.array(
            [self._measure_service.discrete_mi(c, target) for c in codes]
        )
        redundancy = np.zeros(data.m)
        chosen = [int(np.argmax(relevance))]
        while len(chosen) < k:
            last = codes[chosen[-1]]
            for i in range(data.m):
                if i not in chosen:
                    redundancy[i] += self._measure_service.discrete_mi(codes[i], last)
            scores = relevance - redundancy / len(chosen)
            scores[chosen] = -np.inf
            chosen.append(int(np.argmax(scores)))

        return SelectionResult(
            method="mrmr",
            selected=FeatureIndexSet.from_positions(chosen),
            scores=relevance,
            diagnostics={"order": [i + 1 for i in chosen]},
        )

    def qpfs_problem(self, data: Dataset, alpha: float | None = None) -> QpfsProblem:
        f, degenerate = self.relevance(data)
        Q = np.zeros((data.m, data.m))
        live = np.flatnonzero(~np.all(data.features == data.features[:, :1], axis=1))
        if live.size == 1:
            Q[live[0], live[0]] = 1.0
        elif live.size > 1:
            correlation = np.abs(np.corrcoef(data.features[live]))
            Q[np.ix_(live, live)] = np.clip(correlation, 0.0, 1.0)
        Q = (Q + Q.T) / 2.0
        if alpha is None:
            alpha = QpfsProblem.recommended_alpha(Q, f)
        return QpfsProblem(Q=Q, f=f, alpha=float(alpha), degenerate=degenerate)

    def qpfs_solve(self, problem: QpfsProblem) -> np.ndarray:
        a = problem.alpha
        lipschitz = (1.0 - a) * float(np.max(np.abs(np.linalg.eigvalsh(problem.Q))))
        step = 1.0 / lipschitz if lipschitz > 0 else 1.0

        w = np.full(problem.m, 1.0 / problem.m)
        objective = problem.objective(w)
        for _ in range(self._qpfs_max_iters):
            gradient = (1.0 - a) * problem.Q @ w - a * problem.f
            w = self._search_service.project_simplex(w - step * gradient, 1.0)
            updated = problem.objective(w)
            change = abs(objective - updated)
            objective = updated
            if change < self._qpfs_tol:
                return w
        raise SelectionError(
            f"QPFS did not converge in {self._qpfs_max_iters} iterations"
            f" (last objective change {change:.3g})."
        )

    @k_in_range()
    def qpfs(
        self, data: Dataset, k: int, alpha: float | None = None
    ) -> SelectionResult:
        problem = self.qpfs_problem(data, alpha)
        w = self.qpfs_solve(problem)
        keys = [
            (-w[i], bool(problem.degenerate[i]), -problem.f[i], i)
            for i in range(data.m)
        ]
        return SelectionResult(
            method="qpfs",
            selected=_top_k(keys, k),
            scores=w,
            diagnostics={"alpha": problem.alpha},
        )

    def lasso_fit(
        self,
        x: np.ndarray,
        y: np.ndarray,
        lam: float,
        w0: np.ndarray | None = None,
    ) -> np.ndarray:
        m = x.shape[0]
        w = np.zeros(m) if w0 is None else np.array(w0, dtype=np.float64)
        norms = np.einsum("ij,ij->i", x, x)
        residual = y - w @ x
        for _ in range(1000):
            largest = 0.0
            for j in range(m):
                if norms[j] == 0.0:
                    continue
                partial = residual + w[j] * x[j]
                updated = soft_threshold(float(x[j] @ partial), lam / 2.0) / norms[j]
                if updated != w[j]:
                    largest = max(largest, abs(updated - w[j]))
                    residual = partial - updated * x[j]
                    w[j] = updated
            if largest < 1e-10:
                break
        return w

    @k_in_range()
    @binary_or_regression_required("Lasso")
    def lasso_select(self, data: Dataset, k: int) -> SelectionResult:
        x = data.features
        if data.task.is_classification:
            y = np.where(data.target == 1, -1.0, 1.0)
        else:
            y = data.target.astype(np.float64)
        y = y - y.mean()

        lam_max = float(np.max(2.0 * np.abs(x @ y)))
        low, high = 0.0, lam_max
        w = np.zeros(data.m)
        nearest = None
        for _ in range(self._lasso_bisections):
            lam = (low + high) / 2.0
            w = self.lasso_fit(x, y, lam, w)
            size = int(np.count_nonzero(w))
            key = (abs(size - k), size - k)
            if nearest is None or key < nearest[0]:
                nearest = (key, w.copy(), lam)
            if size == k:
                break
            if size > k:
                low = lam
            else:
                high = lam

        (_, offset), w, lam = nearest
        if offset != 0:
            self._logging_gateway.warning(
                f"Lasso found no support of size {k}; returning {k + offset}."
            )
        return SelectionResult(
            method="lasso",
            selected=FeatureIndexSet.from_positions(np.flatnonzero(w)),
            scores=w,
            diagnostics={"lambda": lam, "lambda_max": lam_max, "exact": offset == 0},
        )
