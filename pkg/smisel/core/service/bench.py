"""Provides an implementation of IBenchService."""

__all__ = ["DefaultBenchService"]

import asyncio
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
import time
from types import SimpleNamespace

import numpy as np

from smisel.core.contract.dto.bench import (
    AggregateCell,
    BenchConfig,
    DatasetSource,
    ReportFormat,
    SubsetScore,
    TrialReport,
)
from smisel.core.contract.dto.dataset import (
    Dataset,
    FeatureIndexSet,
    Task,
    ToySpec,
)
from smisel.core.contract.dto.search import Measure
from smisel.core.contract.dto.selection import Direction, SelectionResult
from smisel.core.contract.error import SelectionError, SmiselError
from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.gateway.report import IReportGateway
from smisel.core.contract.service.baseline import IBaselineService
from smisel.core.contract.service.bench import METHODS, IBenchService
from smisel.core.contract.service.dataspace import IDataspaceService
from smisel.core.contract.service.measure import IMeasureService
from smisel.core.contract.service.search import ISearchService
from smisel_util.random import child_seed
from smisel_util.setting import lookup

ANDOR_POOL = (1, 2, 3, 4, 8, 9, 10)

DEFAULT_DATASETS = ("and-or", "quad", "xor")

SEQUENTIAL = {
    "fhsic": (Direction.FORWARD, Measure.HSIC),
    "bhsic": (Direction.BACKWARD, Measure.HSIC),
    "flsmi": (Direction.FORWARD, Measure.LSMI),
    "blsmi": (Direction.BACKWARD, Measure.LSMI),
}


@dataclass(frozen=True)
class _Trial:
    """One unit of benchmark work."""

    method: str

    source: DatasetSource

    trial: int


def _item(entry, name: str):
    """Field of a dataset entry given as a table or a namespace."""
    if isinstance(entry, dict):
        return entry.get(name)
    return getattr(entry, name, None)


# pylint: disable=too-many-instance-attributes
class DefaultBenchService(IBenchService):
    """The default implementation of IBenchService."""

    def __init__(  # pylint: disable=too-many-arguments
        self,
        config: SimpleNamespace,
        dataspace_service: IDataspaceService,
        measure_service: IMeasureService,
        search_service: ISearchService,
        baseline_service: IBaselineService,
        report_gateway: IReportGateway,
        logging_gateway: ILoggingGateway,
    ) -> None:
        self._config = config
        self._dataspace_service = dataspace_service
        self._measure_service = measure_service
        self._search_service = search_service
        self._baseline_service = baseline_service
        self._report_gateway = report_gateway
        self._logging_gateway = logging_gateway

    def bench_config(self) -> BenchConfig:
        sources = []
        for entry in lookup(self._config, "smisel.bench.datasets", DEFAULT_DATASETS):
            if isinstance(entry, str):
                sources.append(DatasetSource(name=entry))
                continue
            path = _item(entry, "path")
            truth = _item(entry, "truth")
            k = _item(entry, "k")
            sources.append(
                DatasetSource(
                    name=_item(entry, "name") or path,
                    path=path,
                    task=Task.parse(_item(entry, "task") or "class"),
                    k=None if k is None else int(k),
                    truth=None if truth is None else FeatureIndexSet.of(truth),
                )
            )

        k = lookup(self._config, "smisel.bench.k", None)
        timings = lookup(self._config, "smisel.bench.timings", "omit")
        formats = lookup(self._config, "smisel.bench.formats", ["csv", "markdown"])
        return BenchConfig(
            methods=tuple(lookup(self._config, "smisel.bench.methods", METHODS)),
            datasets=tuple(sources),
            trials=int(lookup(self._config, "smisel.bench.trials", 10)),
            n=int(lookup(self._config, "smisel.bench.n", 400)),
            k=None if k is None else int(k),
            parallelism=int(lookup(self._config, "smisel.bench.parallelism", 1)),
            master_seed=int(lookup(self._config, "smisel.bench.master_seed", 0)),
            formats=tuple(ReportFormat(f) for f in formats),
            timings=timings != "omit",
        )

    def f_measure(self, selected: FeatureIndexSet, truth: FeatureIndexSet) -> float:
        if len(truth) == 0:
            raise SmiselError("F-measure needs a nonempty true feature set.")
        hits = len(selected & truth)
        if hits == 0:
            return 0.0
        precision = hits / len(selected)
        recall = hits / len(truth)
        return 2.0 * precision * recall / (precision + recall)

    def select(
        self, data: Dataset, method: str, k: int, seed: int = 0
    ) -> SelectionResult:
        # Every selector sees standardized features.
        data, _ = self._dataspace_service.standardize(data)
        match method:
            case "l1lsmi" | "l1hsic":
                measure = Measure.LSMI if method == "l1lsmi" else Measure.HSIC
                return self._search_service.search_k_features(
                    data, k, self._search_service.ascent_config, measure, seed
                )
            case "pc":
                return self._baseline_service.rank_pearson(data, k)
            case "fhsic" | "bhsic" | "flsmi" | "blsmi":
                direction, measure = SEQUENTIAL[method]
                result, _ = self._baseline_service.sequential_search(
                    data, k, direction, measure, seed
                )
                return result
            case "mrmr":
                return self._baseline_service.mrmr(data, k)
            case "qpfs":
                return self._baseline_service.qpfs(data, k)
            case "lasso":
                return self._baseline_service.lasso_select(data, k)
            case "relieff":
                return self._baseline_service.relieff(data, k)
        raise SelectionError(
            f"Unknown method: {method} (expected one of {', '.join(METHODS)})."
        )

    async def run_benchmark(
        self, cfg: BenchConfig
    ) -> tuple[list[TrialReport], list[AggregateCell]]:
        unknown = [m for m in cfg.methods if m not in METHODS]
        if unknown:
            raise SelectionError(f"Unknown methods: {', '.join(unknown)}.")

        # CSV datasets are read once and shared by all trials.
        loaded = {
            source.name: self._dataspace_service.load_csv(source.path, source.task)
            for source in cfg.datasets
            if not source.is_toy
        }
        for source in cfg.datasets:
            if not source.is_toy and source.k is None and cfg.k is None:
                raise SmiselError(f"Dataset {source.name} needs an explicit k.")

        jobs = [
            _Trial(method, source, trial)
            for method in cfg.methods
            for source in cfg.datasets
            for trial in range(cfg.trials)
        ]
        self._logging_gateway.info(
            f"Running {len(jobs)} trials with parallelism {cfg.parallelism}."
        )

        # Seeds are derived per job, so results do not depend on scheduling.
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            reports = await asyncio.gather(
                *[
                    loop.run_in_executor(pool, self._run_trial, cfg, job, loaded)
                    for job in jobs
                ]
            )

        reports = list(reports)
        return reports, self.aggregate(reports, cfg)

    def aggregate(
        self, reports: list[TrialReport], cfg: BenchConfig | None = None
    ) -> list[AggregateCell]:
        if cfg is None:
            methods = list(dict.fromkeys(r.method for r in reports))
            datasets = list(dict.fromkeys(r.dataset for r in reports))
        else:
            methods = list(cfg.methods)
            datasets = [s.name for s in cfg.datasets]

        cells = []
        for method in methods:
            for dataset in datasets:
                cell = [
                    r for r in reports if (r.method, r.dataset) == (method, dataset)
                ]
                if not cell:
                    continue
                values = [r.f_measure for r in cell if r.f_measure is not None]
                cells.append(
                    AggregateCell(
                        method=method,
                        dataset=dataset,
                        mean=float(np.mean(values)) if values else float("nan"),
                        std=float(np.std(values)) if values else float("nan"),
                        trials=len(cell),
                        failures=sum(r.failed for r in cell),
                    )
                )
        return cells

    def enumerate_andor_lsmi(self, n: int, seed: int) -> list[SubsetScore]:
        if n < 50:
            raise SmiselError("The and-or subset study needs n >= 50.")
        data, _ = self._dataspace_service.generate_toy(ToySpec("and-or", n, seed))
        data, _ = self._dataspace_service.standardize(data)
        cv_seed = child_seed(seed, "lsmi")
        scores = [
            self._measure_service.lsmi_score(data, FeatureIndexSet(subset), cv_seed)
            for subset in combinations(ANDOR_POOL, 4)
        ]
        return sorted(scores, key=lambda s: (-s.value, s.features.indices))

    def emit_report(
        self,
        reports: list[TrialReport],
        fmt: ReportFormat,
        path: str,
        cfg: BenchConfig | None = None,
    ) -> str:
        return self._report_gateway.emit(
            reports,
            self.aggregate(reports, cfg),
            fmt,
            path,
            timings=cfg is not None and cfg.timings,
        )

    def load_reports(self, path: str) -> list[TrialReport]:
        return self._report_gateway.load(path)

    def _run_trial(
        self, cfg: BenchConfig, job: _Trial, loaded: dict[str, Dataset]
    ) -> TrialReport:
        source = job.source
        data_seed = child_seed(cfg.master_seed, "data", source.name, job.trial)
        method_seed = child_seed(
            cfg.master_seed, "method", job.method, source.name, job.trial
        )

        selected, f_value, error, diagnostics = FeatureIndexSet(), None, None, {}
        k = source.k or cfg.k or 0
        started = time.perf_counter()
        try:
            if source.is_toy:
                data, truth = self._dataspace_service.generate_toy(
                    ToySpec(source.name, cfg.n, data_seed)
                )
                k = cfg.k or len(truth)
            else:
                data, truth = loaded[source.name], source.truth
                k = source.k or cfg.k
            result = self.select(data, job.method, k, method_seed)
            selected, diagnostics = result.selected, result.diagnostics
            if truth is not None:
                f_value = self.f_measure(selected, truth)
        # A failing trial must not abort the rest of the benchmark.
        # pylint: disable=broad-exception-caught
        except Exception as e:
            error = f"{type(e).__name__}: {e}"
            self._logging_gateway.warning(
                f"Trial {job.method}/{source.name}/{job.trial} failed: {error}"
            )
        wall_time = time.perf_counter() - started
        if source.is_toy:
            # Seed that regenerates the trial dataset with generate_toy.
            diagnostics = {"data_seed": data_seed, **diagnostics}

        self._logging_gateway.debug(
            f"Trial {job.method}/{source.name}/{job.trial}: {{{selected}}}"
            f" f={f_value} ({wall_time:.2f}s)."
        )
        return TrialReport(
            method=job.method,
            dataset=source.name,
            trial=job.trial,
            seed=method_seed,
            k=k,
            selected=selected,
            f_measure=f_value,
            wall_time=wall_time if cfg.timings else None,
            error=error,
            diagnostics=diagnostics,
        )
