"""Provides helper class for dependency injection containers."""

__all__ = ["IDependencyInjector"]

from abc import ABC, abstractmethod
from types import SimpleNamespace

from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.gateway.report import IReportGateway
from smisel.core.contract.gateway.storage.dataset import IDatasetStorageGateway
from smisel.core.contract.service.baseline import IBaselineService
from smisel.core.contract.service.bench import IBenchService
from smisel.core.contract.service.dataspace import IDataspaceService
from smisel.core.contract.service.measure import IMeasureService
from smisel.core.contract.service.search import ISearchService


class IDependencyInjector(ABC):
    """An helper for dependency injection containers."""

    @property
    @abstractmethod
    def config(self) -> SimpleNamespace:
        """Get the global configuration variable."""

    @property
    @abstractmethod
    def logging_gateway(self) -> ILoggingGateway:
        """Get the global logging gateway."""

    @property
    @abstractmethod
    def dataset_storage_gateway(self) -> IDatasetStorageGateway:
        """Get the global dataset storage gateway."""

    @property
    @abstractmethod
    def report_gateway(self) -> IReportGateway:
        """Get the global report gateway."""

    @property
    @abstractmethod
    def dataspace_service(self) -> IDataspaceService:
        """Get the global dataspace service."""

    @property
    @abstractmethod
    def measure_service(self) -> IMeasureService:
        """Get the global dependence measure service."""

    @property
    @abstractmethod
    def search_service(self) -> ISearchService:
        """Get the global sparse search service."""

    @property
    @abstractmethod
    def baseline_service(self) -> IBaselineService:
        """Get the global baseline selector service."""

    @property
    @abstractmethod
    def bench_service(self) -> IBenchService:
        """Get the global benchmark service."""
