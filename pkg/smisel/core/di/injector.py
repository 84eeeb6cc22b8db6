"""Provides an implementation of IDependencyInjector."""

__all__ = ["DependencyInjector"]

from types import SimpleNamespace

from smisel.core.contract.di.injector import IDependencyInjector
from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.gateway.report import IReportGateway
from smisel.core.contract.gateway.storage.dataset import IDatasetStorageGateway
from smisel.core.contract.service.baseline import IBaselineService
from smisel.core.contract.service.bench import IBenchService
from smisel.core.contract.service.dataspace import IDataspaceService
from smisel.core.contract.service.measure import IMeasureService
from smisel.core.contract.service.search import ISearchService


# pylint: disable=too-many-instance-attributes
class DependencyInjector(IDependencyInjector):
    """An implementation of IDependencyInjector."""

    def __init__(  # pylint: disable=too-many-arguments
        self,
        config: SimpleNamespace = None,
        logging_gateway: ILoggingGateway = None,
        dataset_storage_gateway: IDatasetStorageGateway = None,
        report_gateway: IReportGateway = None,
        dataspace_service: IDataspaceService = None,
        measure_service: IMeasureService = None,
        search_service: ISearchService = None,
        baseline_service: IBaselineService = None,
        bench_service: IBenchService = None,
    ):
        self.__config = config
        self.__logging_gateway = logging_gateway
        self.__dataset_storage_gateway = dataset_storage_gateway
        self.__report_gateway = report_gateway
        self.__dataspace_service = dataspace_service
        self.__measure_service = measure_service
        self.__search_service = search_service
        self.__baseline_service = baseline_service
        self.__bench_service = bench_service

    @property
    def config(self) -> SimpleNamespace:
        return self.__config

    @config.setter
    def config(self, value: SimpleNamespace):
        self.__config = value

    @property
    def logging_gateway(self) -> ILoggingGateway:
        return self.__logging_gateway

    @logging_gateway.setter
    def logging_gateway(self, value: ILoggingGateway) -> None:
        self.__logging_gateway = value

    @property
    def dataset_storage_gateway(self) -> IDatasetStorageGateway:
        return self.__dataset_storage_gateway

    @dataset_storage_gateway.setter
    def dataset_storage_gateway(self, value: IDatasetStorageGateway) -> None:
        self.__dataset_storage_gateway = value

    @property
    def report_gateway(self) -> IReportGateway:
        return self.__report_gateway

    @report_gateway.setter
    def report_gateway(self, value: IReportGateway) -> None:
        self.__report_gateway = value

    @property
    def dataspace_service(self) -> IDataspaceService:
        return self.__dataspace_service

    @dataspace_service.setter
    def dataspace_service(self, value: IDataspaceService) -> None:
        self.__dataspace_service = value

    @property
    def measure_service(self) -> IMeasureService:
        return self.__measure_service

    @measure_service.setter
    def measure_service(self, value: IMeasureService) -> None:
        self.__measure_service = value

    @property
    def search_service(self) -> ISearchService:
        return self.__search_service

    @search_service.setter
    def search_service(self, value: ISearchService) -> None:
        self.__search_service = value

    @property
    def baseline_service(self) -> IBaselineService:
        return self.__baseline_service

    @baseline_service.setter
    def baseline_service(self, value: IBaselineService) -> None:
        self.__baseline_service = value

    @property
    def bench_service(self) -> IBenchService:
        return self.__bench_service

    @bench_service.setter
    def bench_service(self, value: IBenchService) -> None:
        self.__bench_service = value
