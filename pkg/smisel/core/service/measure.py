"""Provides an implementation of IMeasureService."""

__all__ = ["DefaultMeasureService"]

from math import ceil, sqrt
from types import SimpleNamespace

import numpy as np
from scipy import linalg
from scipy.spatial.distance import cdist, pdist, squareform
from scipy.stats import rankdata
from sklearn.metrics import mutual_info_score

from smisel.core.contract.dto.bench import SubsetScore
from smisel.core.contract.dto.dataset import Dataset, FeatureIndexSet
from smisel.core.contract.dto.lsmi import (
    Basis,
    Correlation,
    CvGrid,
    HsicConfig,
    LsmiFit,
    LsmiModel,
    OutputKernel,
)
from smisel.core.contract.error import ModelFitError, SmiselError
from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.service.dataspace import IDataspaceService
from smisel.core.contract.service.measure import IMeasureService
from smisel_util.random import child_seed, generator
from smisel_util.setting import lookup


def _as_points(x: np.ndarray) -> np.ndarray:
    """View a vector as a 1 x n point matrix."""
    x = np.asarray(x, dtype=np.float64)
    return x[None, :] if x.ndim == 1 else x


def gaussian_gram(a: np.ndarray, b: np.ndarray, width: float) -> np.ndarray:
    """Gaussian kernel values between the columns of a and b."""
    return np.exp(-cdist(a.T, b.T, "sqeuclidean") / (2.0 * width**2))


class DefaultMeasureService(IMeasureService):
    """The default implementation of IMeasureService."""

    def __init__(
        self,
        config: SimpleNamespace,
        dataspace_service: IDataspaceService,
        logging_gateway: ILoggingGateway,
    ) -> None:
        self._config = config
        self._dataspace_service = dataspace_service
        self._logging_gateway = logging_gateway

        defaults = CvGrid()
        self._grid = CvGrid(
            sigma_scales=tuple(
                lookup(config, "smisel.measure.cv.sigma_scales", defaults.sigma_scales)
            ),
            lambdas=tuple(
                lookup(config, "smisel.measure.cv.lambdas", defaults.lambdas)
            ),
            folds=int(lookup(config, "smisel.measure.cv.folds", defaults.folds)),
        )
        self._basis_count = int(lookup(config, "smisel.measure.basis", 100))
        self._mi_bins = int(lookup(config, "smisel.measure.mi_bins", 10))

    @property
    def grid(self) -> CvGrid:
        return self._grid

    @property
    def basis_count(self) -> int:
        return self._basis_count

    def pearson(self, x: np.ndarray, y: np.ndarray) -> Correlation:
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if x.shape != y.shape or x.shape[0] < 2:
            raise SmiselError("Correlation needs two vectors of equal length >= 2.")
        if np.all(x == x[0]) or np.all(y == y[0]):
            return Correlation(0.0, True)

        xc = x - x.mean()
        yc = y - y.mean()
        value = float(xc @ yc / sqrt(float(xc @ xc) * float(yc @ yc)))
        return Correlation(min(1.0, max(-1.0, value)))

    def hsic(self, x: np.ndarray, y: np.ndarray, cfg: HsicConfig) -> float:
        x = _as_points(x)
        y = np.asarray(y)
        n = x.shape[1]
        if n < 2 or y.shape[0] != n:
            raise SmiselError("HSIC needs at least two paired samples.")

        K = squareform(np.exp(-pdist(x.T, "sqeuclidean") / (2.0 * cfg.width_x**2)))
        np.fill_diagonal(K, 1.0)
        if cfg.output_kernel == OutputKernel.DELTA:
            L = (y[:, None] == y[None, :]).astype(np.float64)
        else:
            L = gaussian_gram(_as_points(y), _as_points(y), cfg.width_y)

        # tr(KHLH) equals the sum of the doubly centred K times L.
        Kc = K - K.mean(axis=0)[None, :] - K.mean(axis=1)[:, None] + K.mean()
        return float(np.sum(Kc * L) / (n - 1) ** 2)

    def discretize(self, x: np.ndarray, bins: int | None = None) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        n = x.shape[0]
        if bins is None:
            bins = min(self._mi_bins, ceil(sqrt(n)))
        _, codes = np.unique(x, return_inverse=True)
        if codes.max(initial=-1) + 1 <= bins:
            return codes
        ranks = rankdata(x, method="min")
        return np.floor((ranks - 1) * bins / n).astype(np.int64)

    def discrete_mi(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(mutual_info_score(np.asarray(x), np.asarray(y)))

    def build_basis(
        self,
        x: np.ndarray,
        y: np.ndarray,
        b: int,
        sigma: float,
        seed: int,
        classification: bool,
    ) -> Basis:
        n = _as_points(x).shape[1]
        if not 1 <= b <= n:
            raise SmiselError(f"Basis count {b} must lie in 1..{n}.")
        if sigma <= 0:
            raise SmiselError("Basis width must be positive.")
        centers = np.sort(generator(seed).choice(n, size=b, replace=False))
        return Basis(centers=centers, sigma=float(sigma), classification=classification)

    def evaluate_basis(
        self, basis: Basis, x: np.ndarray, y: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        x = _as_points(x)
        y = np.asarray(y)
        Px = gaussian_gram(x[:, basis.centers], x, basis.sigma)
        if basis.classification:
            Py = (y[basis.centers][:, None] == y[None, :]).astype(np.float64)
        else:
            y = _as_points(y)
            Py = gaussian_gram(y[:, basis.centers], y, basis.sigma)
        return Px, Py

    def lsmi_solve(self, H: np.ndarray, h: np.ndarray, lam: float) -> LsmiFit:
        if lam <= 0:
            raise SmiselError("Ridge parameter must be positive.")
        A = H + lam * np.eye(H.shape[0])
        try:
            alpha = linalg.cho_solve(linalg.cho_factor(A), h)
        except linalg.LinAlgError:
            self._logging_gateway.warning(
                f"Cholesky factorisation failed (lambda={lam:g}); using pivoted solve."
            )
            try:
                alpha = linalg.solve(A, h, assume_a="sym")
            except linalg.LinAlgError as e:
                raise ModelFitError(
                    "Ridge system is singular.", {"lambda": lam, "b": H.shape[0]}
                ) from e

        if not np.all(np.isfinite(alpha)):
            raise ModelFitError(
                "Ridge solution is not finite.",
                {"lambda": lam, "b": H.shape[0], "cond": float(np.linalg.cond(A))},
            )
        return LsmiFit(
            H=H,
            h=h,
            alpha=alpha,
            value=float(h @ alpha / 2.0 - 0.5),
            penalty=float(lam * alpha @ alpha / 2.0),
        )

    def lsmi_fit(
        self,
        x: np.ndarray,
        y: np.ndarray,
        centers: np.ndarray,
        sigma: float,
        lam: float,
        classification: bool,
    ) -> LsmiFit:
        basis = Basis(np.asarray(centers), float(sigma), classification)
        Px, Py = self.evaluate_basis(basis, x, y)
        n = Px.shape[1]
        H = (Px @ Px.T) * (Py @ Py.T) / n**2
        h = np.mean(Px * Py, axis=1)
        return self.lsmi_solve(H, h, lam)

    # pylint: disable=too-many-locals
    def lsmi_cv_select(
        self,
        x: np.ndarray,
        y: np.ndarray,
        b: int,
        grid: CvGrid,
        seed: int,
        classification: bool,
    ) -> tuple[LsmiModel, LsmiFit]:
        x = _as_points(x)
        n = x.shape[1]
        if n < grid.folds:
            raise SmiselError(f"Cross validation needs n >= {grid.folds} samples.")

        sigma_med = self._dataspace_service.median_pairwise_distance(x)
        if sigma_med <= 0:
            self._logging_gateway.debug("All weighted points coincide; sigma_med=1.")
            sigma_med = 1.0

        basis = self.build_basis(
            x, y, min(b, n), 1.0, child_seed(seed, "centers"), classification
        )
        permutation = generator(child_seed(seed, "folds")).permutation(n)
        folds = np.array_split(permutation, grid.folds)

        best = None
        # Descending order with strict improvement keeps the larger sigma,
        # then the larger lambda, on ties.
        for scale in sorted(set(grid.sigma_scales), reverse=True):
            sigma = scale * sigma_med
            Px, Py = self.evaluate_basis(
                Basis(basis.centers, sigma, classification), x, y
            )
            Gx, Gy = Px @ Px.T, Py @ Py.T
            h_all = np.sum(Px * Py, axis=1)

            parts = []
            for test in folds:
                n_test, n_train = test.shape[0], n - test.shape[0]
                Gx_test = Px[:, test] @ Px[:, test].T
                Gy_test = Py[:, test] @ Py[:, test].T
                h_test = np.sum(Px[:, test] * Py[:, test], axis=1)
                parts.append(
                    (
                        (Gx - Gx_test) * (Gy - Gy_test) / n_train**2,
                        (h_all - h_test) / n_train,
                        Gx_test * Gy_test / n_test**2,
                        h_test / n_test,
                    )
                )

            for lam in sorted(set(grid.lambdas), reverse=True):
                try:
                    score = 0.0
                    for H_train, h_train, H_test, h_test in parts:
                        alpha = self.lsmi_solve(H_train, h_train, lam).alpha
                        score += 0.5 * alpha @ H_test @ alpha - h_test @ alpha
                    score /= len(parts)
                except ModelFitError:
                    continue
                if not np.isfinite(score):
                    continue
                if best is None or score < best[0]:
                    best = (score, sigma, lam)

        if best is None:
            raise ModelFitError(
                "No finite cross-validation score on the grid.",
                {"sigma_med": sigma_med, "b": basis.b},
            )

        score, sigma, lam = best
        fit = self.lsmi_fit(x, y, basis.centers, sigma, lam, classification)
        self._logging_gateway.debug(
            f"LSMI model: sigma={sigma:.4g} lambda={lam:g} cv={score:.6g}"
            f" value={fit.value:.6g}."
        )
        model = LsmiModel(
            centers=basis.centers,
            sigma=sigma,
            lam=lam,
            alpha=fit.alpha,
            cv_score=float(score),
        )
        return model, fit

    def lsmi_score(
        self, data: Dataset, subset: FeatureIndexSet, seed: int = 0
    ) -> SubsetScore:
        if len(subset) == 0:
            raise SmiselError("Cannot score an empty feature subset.")
        FeatureIndexSet.of(subset, data.m)
        x = data.features[subset.positions]
        model, fit = self.lsmi_cv_select(
            x,
            data.target,
            min(self._basis_count, data.n),
            self._grid,
            seed,
            data.task.is_classification,
        )
        # Each subset picks its own sigma and lambda. Only the compensated
        # value is comparable across them.
        return SubsetScore(
            features=subset,
            value=fit.compensated_value,
            sigma=model.sigma,
            lam=model.lam,
        )
