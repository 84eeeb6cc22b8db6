"""Feature selection application package."""

__all__ = [
    "create_app",
    "run_andor_table",
    "run_bench",
    "run_gen",
    "run_lsmi",
    "run_select",
]

import asyncio
import os
from types import SimpleNamespace

from smisel.config import AppConfig, Config
from smisel.core import di
from smisel.core.contract.di.injector import IDependencyInjector
from smisel.core.contract.dto.bench import SubsetScore
from smisel.core.contract.dto.dataset import FeatureIndexSet, Task, ToySpec
from smisel.core.contract.dto.selection import SelectionResult
from smisel.core.contract.error import SmiselError
from smisel.core.contract.gateway.logging import ILoggingGateway


def create_app(
    config: SimpleNamespace = di.container.config,
    logger: ILoggingGateway = di.container.logging_gateway,
) -> type[Config]:
    """Application factory."""
    # Check for valid configuration name.
    try:
        environment = config.smisel.environment
    except AttributeError as e:
        if logger is not None:
            logger.error("Configuration unavailable.")
        raise SmiselError("Configuration unavailable.") from e

    if logger is None:
        raise SmiselError("Logging gateway unavailable.")

    logger.debug(f"Configured environment: {environment}.")
    if environment not in AppConfig:
        logger.error("Invalid environment name.")
        raise SmiselError(f"Invalid environment name: {environment}.")

    AppConfig[environment].init_app(logger)
    return AppConfig[environment]


def _service(injector: IDependencyInjector, name: str):
    """A provider from the container, or an error if it failed to build."""
    provider = getattr(injector, name, None)
    if provider is None:
        raise SmiselError(f"Provider unavailable ({name}).")
    return provider


def run_gen(
    injector: IDependencyInjector, name: str, n: int, seed: int, out: str
) -> FeatureIndexSet:
    """Generate a toy dataset, write it as CSV and return its true features."""
    dataspace = _service(injector, "dataspace_service")
    data, truth = dataspace.generate_toy(ToySpec(name, n, seed))
    dataspace.save_csv(data, out)
    _service(injector, "logging_gateway").info(
        f"Wrote {name} (n={n}, seed={seed}) to {out}."
    )
    return truth


# pylint: disable=too-many-arguments
def run_select(
    injector: IDependencyInjector,
    path: str,
    task: str,
    method: str,
    k: int,
    seed: int = 0,
) -> SelectionResult:
    """Load a CSV dataset and run one selector on it."""
    data = _service(injector, "dataspace_service").load_csv(path, Task.parse(task))
    return _service(injector, "bench_service").select(data, method, k, seed)


def run_bench(injector: IDependencyInjector, out_dir: str) -> list[str]:
    """Run the configured benchmark and write one report per format."""
    bench = _service(injector, "bench_service")
    cfg = bench.bench_config()
    reports, _ = asyncio.run(bench.run_benchmark(cfg))

    paths = []
    for fmt in cfg.formats:
        path = os.path.join(out_dir, f"report{fmt.suffix}")
        paths.append(bench.emit_report(reports, fmt, path, cfg))

    failures = sum(r.failed for r in reports)
    if failures:
        _service(injector, "logging_gateway").warning(
            f"{failures} of {len(reports)} trials failed."
        )
    return paths


def run_lsmi(
    injector: IDependencyInjector,
    path: str,
    features: str,
    task: str = "class",
    seed: int = 0,
) -> SubsetScore:
    """Score an unweighted feature subset of a CSV dataset."""
    dataspace = _service(injector, "dataspace_service")
    data = dataspace.load_csv(path, Task.parse(task))
    subset = FeatureIndexSet.of(FeatureIndexSet.parse(features), data.m)
    if len(subset) == 0:
        raise SmiselError("No features given.")
    data, _ = dataspace.standardize(data)
    return _service(injector, "measure_service").lsmi_score(data, subset, seed)


def run_andor_table(
    injector: IDependencyInjector, n: int = 400, seed: int = 0
) -> list[SubsetScore]:
    """LSMI of the and-or 4-subsets, best first."""
    return _service(injector, "bench_service").enumerate_andor_lsmi(n, seed)
