"""Wires real services with a mocked logging gateway for tests."""

from types import SimpleNamespace
import unittest.mock

from smisel.core.service.baseline import DefaultBaselineService
from smisel.core.service.bench import DefaultBenchService
from smisel.core.service.dataspace import DefaultDataspaceService
from smisel.core.service.measure import DefaultMeasureService
from smisel.core.service.search import DefaultSearchService


def namespace(**sections) -> SimpleNamespace:
    """Configuration namespace with the given smisel sections."""
    return SimpleNamespace(
        smisel=SimpleNamespace(
            **{name: SimpleNamespace(**values) for name, values in sections.items()}
        )
    )


def build_services(
    config: SimpleNamespace | None = None, report=None
) -> SimpleNamespace:
    """Every service wired together; storage and, unless given, report are mocks."""
    config = config or SimpleNamespace()
    logger = unittest.mock.Mock()
    report = report or unittest.mock.Mock()
    dataspace = DefaultDataspaceService(
        config=config,
        dataset_storage_gateway=unittest.mock.Mock(),
        logging_gateway=logger,
    )
    measure = DefaultMeasureService(
        config=config, dataspace_service=dataspace, logging_gateway=logger
    )
    search = DefaultSearchService(
        config=config,
        dataspace_service=dataspace,
        measure_service=measure,
        logging_gateway=logger,
    )
    baseline = DefaultBaselineService(
        config=config,
        dataspace_service=dataspace,
        measure_service=measure,
        search_service=search,
        logging_gateway=logger,
    )
    bench = DefaultBenchService(
        config=config,
        dataspace_service=dataspace,
        measure_service=measure,
        search_service=search,
        baseline_service=baseline,
        report_gateway=report,
        logging_gateway=logger,
    )
    return SimpleNamespace(
        logger=logger,
        report=report,
        dataspace=dataspace,
        measure=measure,
        search=search,
        baseline=baseline,
        bench=bench,
    )
