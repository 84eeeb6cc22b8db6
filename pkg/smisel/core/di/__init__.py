"""Provides an application-wide dependency injection container."""

__all__ = ["build_container", "container"]

from importlib import import_module
import logging
import os
from types import SimpleNamespace

import tomlkit
from tomlkit.exceptions import TOMLKitError

from smisel.core.contract.error import SmiselError
from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.gateway.report import IReportGateway
from smisel.core.contract.gateway.storage.dataset import IDatasetStorageGateway
from smisel.core.contract.service.baseline import IBaselineService
from smisel.core.contract.service.bench import IBenchService
from smisel.core.contract.service.dataspace import IDataspaceService
from smisel.core.contract.service.measure import IMeasureService
from smisel.core.contract.service.search import ISearchService

from .injector import DependencyInjector

DEFAULT_CONFIG_FILE = "smisel.toml"


def _nested_namespace_from_dict(items: dict, ns: SimpleNamespace) -> None:
    """Convert a nested dict to a nested SimpleNamespace.

    Every namespace keeps its source dict as the attribute "dict". Lists are
    converted item by item, so tables inside arrays become namespaces too.
    """
    if not isinstance(items, dict) or ns is None:
        return

    setattr(ns, "dict", items)
    for key, value in items.items():
        if isinstance(value, dict):
            nested_space = SimpleNamespace()
            _nested_namespace_from_dict(value, nested_space)
            setattr(ns, key, nested_space)
            continue

        if isinstance(value, list):
            converted = []
            for item in value:
                if isinstance(item, dict):
                    nested_space = SimpleNamespace()
                    _nested_namespace_from_dict(item, nested_space)
                    converted.append(nested_space)
                else:
                    converted.append(item)
            setattr(ns, key, converted)
            continue

        setattr(ns, key, value)


def _merge(base: dict, override: dict) -> dict:
    """Deep-merge override into a copy of base."""
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _resolve_provider(
    settings: dict,
    injector: DependencyInjector,
    provider: str,
    path: tuple[str, ...],
    interface: type,
    **dependencies: str,
):
    """Import the configured module for provider and build the first subclass.

    Keyword arguments map constructor parameters to injector attributes, so
    config="config" passes injector.config. Returns None, after logging the
    reason, when any step fails.
    """
    # Get logger.
    try:
        logger = injector.logging_gateway
    except AttributeError:
        # We'll get an AttributeError if injector
        # is incorrectly typed.
        logging.getLogger().error(f"Invalid injector ({provider}).")
        return None

    if logger is None:
        # The logging gateway failed to build. Fall back
        # to the root logger so wiring errors still surface.
        logger = logging.getLogger()
        logger.warning(f"Using root logger ({provider}).")

    # Attempt to import the provider module.
    try:
        module = settings["smisel"]["modules"]["core"]
        for key in path:
            module = module[key]
        import_module(name=module)
    except (KeyError, TypeError, ValueError):
        logger.error(f"Invalid configuration ({provider}).")
        return None
    except ModuleNotFoundError:
        # This could fail due to missing configuration values or
        # invalid module paths. Either way, no need to continue
        # if it fails.
        logger.error(f"Could not import module ({provider}).")
        return None

    try:
        resolved = {
            name: getattr(injector, attribute)
            for name, attribute in dependencies.items()
        }
    except AttributeError:
        logger.error(f"Invalid injector ({provider}).")
        return None

    try:
        return interface.__subclasses__()[0](**resolved)
    except IndexError:
        # We'll get an IndexError if the imported module
        # doesn't provide a subclass of the interface.
        logger.error(f"Valid subclass not found ({provider}).")
    except SmiselError as e:
        # Settings are validated when services are constructed.
        logger.error(f"Invalid settings ({provider}): {e}")
    return None


def _build_config_provider(
    config: dict,
    injector: DependencyInjector,
) -> None:
    """Build configuration provider object for DI container."""
    ns = SimpleNamespace()
    _nested_namespace_from_dict(config, ns)
    try:
        injector.config = ns
    except AttributeError:
        # We can get here due to a null or any other
        # incorrectly typed injector.
        logging.getLogger().error("Invalid injector (config).")


def _build_logging_gateway_provider(
    config: dict,
    injector: DependencyInjector,
) -> None:
    """Build logging gateway provider for DI container."""
    try:
        logger = logging.getLogger(config["smisel"]["logger"]["name"])
    except (KeyError, TypeError):
        logger = logging.getLogger()

    try:
        import_module(name=config["smisel"]["modules"]["core"]["gateway"]["logging"])
    except (KeyError, TypeError):
        logger.error("Invalid configuration (logging_gateway).")
        return
    except ModuleNotFoundError:
        logger.error("Could not import module (logging_gateway).")
        return

    try:
        try:
            injector.logging_gateway = ILoggingGateway.__subclasses__()[0](
                config=injector.config,
            )
        except AttributeError:
            # Also raised when the logger section is missing from config.
            logger.error("Invalid injector (logging_gateway).")
    except IndexError:
        logger.error("Valid subclass not found (logging_gateway).")


def _build_dataset_storage_gateway_provider(
    config: dict,
    injector: DependencyInjector,
) -> None:
    """Build dataset storage gateway provider for DI container."""
    gateway = _resolve_provider(
        config,
        injector,
        "dataset_storage_gateway",
        ("gateway", "storage", "dataset"),
        IDatasetStorageGateway,
        config="config",
        logging_gateway="logging_gateway",
    )
    if gateway is not None:
        injector.dataset_storage_gateway = gateway


def _build_report_gateway_provider(
    config: dict,
    injector: DependencyInjector,
) -> None:
    """Build report gateway provider for DI container."""
    gateway = _resolve_provider(
        config,
        injector,
        "report_gateway",
        ("gateway", "report"),
        IReportGateway,
        config="config",
        logging_gateway="logging_gateway",
    )
    if gateway is not None:
        injector.report_gateway = gateway


def _build_dataspace_service_provider(
    config: dict,
    injector: DependencyInjector,
) -> None:
    """Build dataspace service provider for DI container."""
    service = _resolve_provider(
        config,
        injector,
        "dataspace_service",
        ("service", "dataspace"),
        IDataspaceService,
        config="config",
        dataset_storage_gateway="dataset_storage_gateway",
        logging_gateway="logging_gateway",
    )
    if service is not None:
        injector.dataspace_service = service


def _build_measure_service_provider(
    config: dict,
    injector: DependencyInjector,
) -> None:
    """Build dependence measure service provider for DI container."""
    service = _resolve_provider(
        config,
        injector,
        "measure_service",
        ("service", "measure"),
        IMeasureService,
        config="config",
        dataspace_service="dataspace_service",
        logging_gateway="logging_gateway",
    )
    if service is not None:
        injector.measure_service = service


def _build_search_service_provider(
    config: dict,
    injector: DependencyInjector,
) -> None:
    """Build sparse search service provider for DI container."""
    service = _resolve_provider(
        config,
        injector,
        "search_service",
        ("service", "search"),
        ISearchService,
        config="config",
        dataspace_service="dataspace_service",
        measure_service="measure_service",
        logging_gateway="logging_gateway",
    )
    if service is not None:
        injector.search_service = service


def _build_baseline_service_provider(
    config: dict,
    injector: DependencyInjector,
) -> None:
    """Build baseline selector service provider for DI container."""
    service = _resolve_provider(
        config,
        injector,
        "baseline_service",
        ("service", "baseline"),
        IBaselineService,
        config="config",
        dataspace_service="dataspace_service",
        measure_service="measure_service",
        search_service="search_service",
        logging_gateway="logging_gateway",
    )
    if service is not None:
        injector.baseline_service = service


def _build_bench_service_provider(
    config: dict,
    injector: DependencyInjector,
) -> None:
    """Build benchmark service provider for DI container."""
    service = _resolve_provider(
        config,
        injector,
        "bench_service",
        ("service", "bench"),
        IBenchService,
        config="config",
        dataspace_service="dataspace_service",
        measure_service="measure_service",
        search_service="search_service",
        baseline_service="baseline_service",
        report_gateway="report_gateway",
        logging_gateway="logging_gateway",
    )
    if service is not None:
        injector.bench_service = service


def _base_directory() -> str:
    """Repository root, three levels above this package."""
    rel = os.path.join(os.path.dirname(os.path.realpath(__file__)), "..", "..", "..")
    return os.path.realpath(rel)


def _load_config(config_file: str) -> dict:
    """Load TOML configuration, relative to the repository root unless absolute."""
    # Get application base path.
    basedir = _base_directory()
    try:
        with open(os.path.join(basedir, config_file), "r", encoding="utf8") as f:
            config = tomlkit.loads(f.read()).unwrap()
    except FileNotFoundError:
        # Callers decide whether a missing file is fatal.
        logging.getLogger().error(f"Configuration file not found ({config_file}).")
        return {}
    except TOMLKitError as e:
        logging.getLogger().error(f"Invalid configuration file ({config_file}): {e}")
        return {}

    config["basedir"] = basedir
    return config


def build_container(config_file: str | None = None) -> DependencyInjector:
    """Build providers from the default configuration and an optional override.

    Order is important.
    """
    config = _load_config(DEFAULT_CONFIG_FILE)
    if config_file is not None:
        # A user file only needs the keys it changes.
        override = _load_config(os.path.abspath(config_file))
        if not override:
            raise SmiselError(f"Configuration unavailable: {config_file}.")
        config = _merge(config, override)

    injector = DependencyInjector()

    _build_config_provider(config, injector)

    _build_logging_gateway_provider(config, injector)

    _build_dataset_storage_gateway_provider(config, injector)

    _build_report_gateway_provider(config, injector)

    _build_dataspace_service_provider(config, injector)

    _build_measure_service_provider(config, injector)

    _build_search_service_provider(config, injector)

    _build_baseline_service_provider(config, injector)

    _build_bench_service_provider(config, injector)

    return injector


container = build_container()
