"""Provides an implementation of ISearchService."""

__all__ = ["DefaultSearchService"]

from math import sqrt
from types import SimpleNamespace

import numpy as np
from scipy.spatial.distance import cdist

from smisel.core.contract.dto.dataset import Dataset, FeatureIndexSet
from smisel.core.contract.dto.lsmi import Basis, HsicConfig, LsmiModel, OutputKernel
from smisel.core.contract.dto.search import (
    AscentConfig,
    AscentResult,
    Candidate,
    FeatureWeights,
    Measure,
    RadiusSearchState,
    RadiusSolve,
)
from smisel.core.contract.dto.selection import SelectionResult
from smisel.core.contract.error import ModelFitError, SearchError
from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.service.dataspace import IDataspaceService
from smisel.core.contract.service.measure import IMeasureService
from smisel.core.contract.service.search import ISearchService, RadiusSolver
from smisel_util.random import child_seed, generator
from smisel_util.setting import lookup

INITIAL_RADIUS = 0.1


class DefaultSearchService(ISearchService):
    """The default implementation of ISearchService."""

    def __init__(
        self,
        config: SimpleNamespace,
        dataspace_service: IDataspaceService,
        measure_service: IMeasureService,
        logging_gateway: ILoggingGateway,
    ) -> None:
        self._config = config
        self._dataspace_service = dataspace_service
        self._measure_service = measure_service
        self._logging_gateway = logging_gateway

        defaults = AscentConfig()
        settings = {}
        for name in AscentConfig.__dataclass_fields__:
            default = getattr(defaults, name)
            value = lookup(config, f"smisel.search.{name}", default)
            # Only the time budget may be unset.
            kind = float if default is None else type(default)
            settings[name] = None if value is None else kind(value)
        self._ascent_config = AscentConfig(**settings)

    @property
    def ascent_config(self) -> AscentConfig:
        return self._ascent_config

    def project_simplex(self, v: np.ndarray, r: float) -> np.ndarray:
        if r <= 0:
            raise SearchError("Projection radius must be positive.")
        v = np.asarray(v, dtype=np.float64)
        u = np.sort(v)[::-1]
        shifted = u - (np.cumsum(u) - r) / np.arange(1, u.shape[0] + 1)
        rho = int(np.flatnonzero(shifted > 0).max()) + 1
        theta = (u[:rho].sum() - r) / rho
        return np.maximum(v - theta, 0.0)

    def project_l1_positive(self, v: np.ndarray, r: float) -> np.ndarray:
        if r <= 0:
            raise SearchError("Projection radius must be positive.")
        u = np.maximum(np.asarray(v, dtype=np.float64), 0.0)
        if u.sum() <= r:
            return u
        return self.project_simplex(u, r)

    def lsmi_objective_and_gradient(
        self, data: Dataset, w: FeatureWeights, model: LsmiModel
    ) -> tuple[float, np.ndarray]:
        X = data.features
        n = data.n
        weights = w.w
        basis = Basis(model.centers, model.sigma, data.task.is_classification)
        Px, Py = self._measure_service.evaluate_basis(
            basis, weights[:, None] * X, data.target
        )
        Gy = Py @ Py.T
        H = (Px @ Px.T) * Gy / n**2
        h = np.mean(Px * Py, axis=1)
        fit = self._measure_service.lsmi_solve(H, h, model.lam)
        alpha = fit.alpha

        # grad_j = sum over (l, i) of A[l, i] * d log Px[l, i] / d w_j.
        M = np.outer(alpha, alpha) * Gy
        A = Px * (alpha[:, None] * Py / n - (M @ Px) / n**2)
        Xc = X[:, model.centers]
        squared = (
            (X**2) @ A.sum(axis=0)
            - 2.0 * np.sum((Xc @ A) * X, axis=1)
            + (Xc**2) @ A.sum(axis=1)
        )
        gradient = -(weights / model.sigma**2) * squared
        self._check_gradient(gradient)
        return fit.value, gradient

    def hsic_objective_and_gradient(
        self,
        data: Dataset,
        w: FeatureWeights,
        width: float,
        output_kernel: OutputKernel,
    ) -> tuple[float, np.ndarray]:
        X = data.features
        n = data.n
        weights = w.w
        xw = weights[:, None] * X
        K = np.exp(-cdist(xw.T, xw.T, "sqeuclidean") / (2.0 * width**2))

        y = data.target
        if output_kernel == OutputKernel.DELTA:
            L = (y[:, None] == y[None, :]).astype(np.float64)
        else:
            width_y = self._width(y[None, :])
            distances = cdist(y[:, None], y[:, None], "sqeuclidean")
            L = np.exp(-distances / (2.0 * width_y**2))
        Lc = L - L.mean(axis=0)[None, :] - L.mean(axis=1)[:, None] + L.mean()

        B = K * Lc
        value = float(B.sum() / (n - 1) ** 2)
        squared = 2.0 * (X**2) @ B.sum(axis=1) - 2.0 * np.sum((X @ B) * X, axis=1)
        gradient = -(weights / width**2) * squared / (n - 1) ** 2
        self._check_gradient(gradient)
        return value, gradient

    # pylint: disable=too-many-locals
    def ascend(
        self,
        data: Dataset,
        w0: FeatureWeights,
        cfg: AscentConfig,
        measure: Measure,
        seed: int = 0,
    ) -> AscentResult:
        r = w0.r
        w = np.array(w0.w)
        output_kernel = (
            OutputKernel.DELTA if data.task.is_classification else OutputKernel.GAUSSIAN
        )

        def select_model(weights: np.ndarray, t: int):
            xw = weights[:, None] * data.features
            if measure == Measure.HSIC:
                return self._width(xw)
            model, _ = self._measure_service.lsmi_cv_select(
                xw,
                data.target,
                min(self._measure_service.basis_count, data.n),
                self._measure_service.grid,
                child_seed(seed, "cv", t),
                data.task.is_classification,
            )
            return model

        def evaluate(weights: np.ndarray, model) -> tuple[float, np.ndarray]:
            feasible = FeatureWeights(weights, r)
            if measure == Measure.HSIC:
                return self.hsic_objective_and_gradient(
                    data, feasible, model, output_kernel
                )
            return self.lsmi_objective_and_gradient(data, feasible, model)

        # Select a model at the starting point.
        model = select_model(w, 0)
        value, gradient = evaluate(w, model)
        if not np.isfinite(value):
            raise SearchError("Objective is not finite at the starting point.")

        trace = [value]
        best_value, best_w, best_model = value, w, model
        checkpoint = best_value
        t = 0
        for t in range(1, cfg.max_iters + 1):
            scale = float(np.max(np.abs(gradient)))
            # w is stationary, so no iteration is taken.
            if scale == 0.0:
                t -= 1
                break

            # Moves are measured in units of the radius.
            w = self.project_l1_positive(
                w + cfg.step0 * r / sqrt(t) * gradient / scale, r
            )
            # Refresh sigma and lambda, or the HSIC width, once per period.
            if t % cfg.model_select_period == 0:
                model = select_model(w, t)
            value, gradient = evaluate(w, model)
            if not np.isfinite(value):
                raise SearchError(f"Objective became non-finite at iteration {t}.")
            trace.append(value)

            if value > best_value:
                best_value, best_w, best_model = value, w, model

            # Stop once a whole period brings less than tol.
            if t % cfg.model_select_period == 0:
                if best_value - checkpoint < cfg.tol:
                    break
                checkpoint = best_value

        return AscentResult(
            weights=FeatureWeights(best_w, r),
            value=best_value,
            trace=tuple(trace),
            iterations=t,
            model=best_model,
        )

    def extract_support(self, w: FeatureWeights, eps: float) -> FeatureIndexSet:
        top = float(np.max(w.w, initial=0.0))
        if top <= 0.0:
            return FeatureIndexSet()
        return FeatureIndexSet.from_positions(np.flatnonzero(w.w > eps * top))

    def solve_radius(
        self,
        data: Dataset,
        r: float,
        cfg: AscentConfig,
        measure: Measure,
        seed: int = 0,
    ) -> RadiusSolve:
        best, best_restart = None, -1
        for restart in range(cfg.restarts):
            restart_seed = child_seed(seed, "restart", restart)
            w0 = self._random_start(data.m, r, restart_seed)
            try:
                result = self.ascend(data, w0, cfg, measure, restart_seed)
            except (ModelFitError, SearchError) as e:
                self._logging_gateway.warning(
                    f"Restart {restart} at r={r:g} aborted: {e}"
                )
                continue
            if best is None or result.value > best.value:
                best, best_restart = result, restart

        if best is None:
            return RadiusSolve(
                r=r, weights=None, support=FeatureIndexSet(), value=np.nan
            )

        # The support is scored as an unweighted subset.
        support = self.extract_support(best.weights, cfg.nonzero_eps)
        value = self._subset_value(data, support, measure, child_seed(seed, "score"))
        self._logging_gateway.debug(
            f"r={r:g}: support {{{support}}} (size {len(support)}),"
            f" objective {best.value:.6g}, subset value {value:.6g},"
            f" restart {best_restart}."
        )
        return RadiusSolve(
            r=r,
            weights=best.weights,
            support=support,
            value=value,
            restart=best_restart,
        )

    def rank_candidates(self, tried: list[Candidate], k: int) -> list[Candidate]:
        return sorted(
            tried,
            key=lambda c: (abs(len(c.support) - k), len(c.support) - k, -c.value),
        )

    # pylint: disable=too-many-arguments
    def search_k_features(
        self,
        data: Dataset,
        k: int,
        cfg: AscentConfig,
        measure: Measure,
        seed: int = 0,
        solver: RadiusSolver | None = None,
    ) -> SelectionResult:
        if not 1 <= k <= data.m:
            raise SearchError(f"k must lie in 1..{data.m}, got {k}.")
        if solver is None:

            def solver(r: float, solve_seed: int) -> RadiusSolve:
                return self.solve_radius(data, r, cfg, measure, solve_seed)

        state = RadiusSearchState(
            max_solves=cfg.max_solves, max_seconds=cfg.max_seconds
        )
        solved: list[tuple[Candidate, RadiusSolve]] = []

        def attempt(r: float) -> int:
            solve = solver(r, child_seed(seed, "radius", state.solves))
            candidate = Candidate(r=r, support=solve.support, value=solve.value)
            state.record(candidate)
            solved.append((candidate, solve))
            return len(solve.support)

        def result(candidate: Candidate, exact: bool) -> SelectionResult:
            solve = next(s for c, s in solved if c is candidate)
            return SelectionResult(
                method=f"l1{measure.value}",
                selected=candidate.support,
                scores=None if solve.weights is None else solve.weights.w,
                diagnostics={
                    "r": candidate.r,
                    "value": candidate.value,
                    "exact": exact,
                    "solves": state.solves,
                    "r_trace": [c.r for c, _ in solved],
                    "size_trace": [len(c.support) for c, _ in solved],
                },
            )

        # Double the radius until the support reaches k features.
        r = INITIAL_RADIUS
        size = -1
        while not state.exhausted:
            r *= 2.0
            size = attempt(r)
            if size == k:
                return result(solved[-1][0], True)
            if size > k:
                state.r_high, state.r_low = r, r / 2.0
                break
            state.r_low = r

        # Then bisect between the last two radii.
        if size > k:
            while not state.exhausted:
                r = (state.r_low + state.r_high) / 2.0
                size = attempt(r)
                if size == k:
                    return result(solved[-1][0], True)
                if size > k:
                    state.r_high = r
                else:
                    state.r_low = r

        # No radius gave exactly k features.
        nonempty = [c for c in state.tried if len(c.support) > 0]
        if not nonempty:
            raise SearchError(
                f"No radius produced a nonempty support ({state.solves} solves)."
            )
        best = self.rank_candidates(nonempty, k)[0]
        self._logging_gateway.debug(
            f"Radius budget exhausted; best candidate r={best.r:g}"
            f" size={len(best.support)} for k={k}."
        )
        return result(best, False)

    def _random_start(self, m: int, r: float, seed: int) -> FeatureWeights:
        rng = generator(seed)
        draws = rng.exponential(size=m)
        w0 = draws / draws.sum() * r * rng.uniform(0.5, 1.0)
        return FeatureWeights(w0, r)

    def _width(self, points: np.ndarray) -> float:
        width = self._dataspace_service.median_pairwise_distance(points)
        return width if width > 0 else 1.0

    def _subset_value(
        self, data: Dataset, support: FeatureIndexSet, measure: Measure, seed: int
    ) -> float:
        if len(support) == 0:
            return np.nan
        if measure == Measure.LSMI:
            return self._measure_service.lsmi_score(data, support, seed).value
        x = data.features[support.positions]
        if data.task.is_classification:
            cfg = HsicConfig(self._width(x), OutputKernel.DELTA)
        else:
            cfg = HsicConfig(
                self._width(x), OutputKernel.GAUSSIAN, self._width(data.target[None, :])
            )
        return self._measure_service.hsic(x, data.target, cfg)

    @staticmethod
    def _check_gradient(gradient: np.ndarray) -> None:
        bad = np.flatnonzero(~np.isfinite(gradient))
        if bad.size:
            raise SearchError(f"Gradient is not finite at feature {int(bad[0]) + 1}.")
