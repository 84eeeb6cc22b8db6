"""Provides a comma-separated text dataset storage gateway."""

__all__ = ["CSVDatasetStorageGateway"]

import csv
import os
from types import SimpleNamespace

from atomicwrites import atomic_write
import numpy as np

from smisel.core.contract.dto.dataset import Dataset, Task, TaskKind
from smisel.core.contract.error import DatasetError, DatasetParseError
from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.gateway.storage.dataset import IDatasetStorageGateway


def _parse_row(cells: list[str]) -> list[float] | None:
    """Numeric values of a row, or None when any cell is not a number."""
    try:
        return [float(c) for c in cells]
    except ValueError:
        return None


class CSVDatasetStorageGateway(IDatasetStorageGateway):
    """A dataset storage gateway for comma-separated files, target last."""

    def __init__(
        self,
        config: SimpleNamespace,
        logging_gateway: ILoggingGateway,
    ) -> None:
        self._config = config
        self._logging_gateway = logging_gateway

    def load(self, path: str, task: TaskKind) -> Dataset:
        try:
            with open(path, "r", encoding="utf8", newline="") as f:
                lines = list(enumerate(csv.reader(f), start=1))
        except FileNotFoundError as e:
            raise DatasetError(f"Dataset file not found: {path}.") from e
        except OSError as e:
            raise DatasetError(f"Could not read dataset file {path}: {e}.") from e

        lines = [(no, row) for no, row in lines if any(c.strip() for c in row)]
        if not lines:
            raise DatasetError(f"Dataset file is empty: {path}.")

        # A non-numeric first row is a header.
        if _parse_row(lines[0][1]) is None:
            width = len(lines[0][1])
            lines = lines[1:]
        else:
            width = len(lines[0][1])
        if not lines:
            raise DatasetError(f"Dataset file has no data rows: {path}.")
        if width < 2:
            raise DatasetParseError(
                "need at least one feature column and a target column.",
                line=lines[0][0],
            )

        rows = []
        for no, row in lines:
            if len(row) != width:
                raise DatasetParseError(
                    f"ragged row with {len(row)} cells, expected {width}.", line=no
                )
            values = _parse_row(row)
            if values is None:
                raise DatasetParseError("non-numeric cell.", line=no)
            if not all(np.isfinite(values)):
                raise DatasetParseError("non-finite cell.", line=no)
            rows.append(values)

        table = np.asarray(rows, dtype=np.float64)
        features = table[:, :-1].T
        raw_target = table[:, -1]

        if task == TaskKind.CLASSIFICATION:
            codes: dict[float, int] = {}
            for value in raw_target:
                codes.setdefault(float(value), len(codes) + 1)
            target = np.array([codes[float(v)] for v in raw_target], dtype=np.int64)
            kind = Task.classification(len(codes))
        else:
            target = raw_target
            kind = Task.regression()

        self._logging_gateway.debug(
            f"Loaded {path}: m={features.shape[0]}, n={features.shape[1]}."
        )
        return Dataset(features, target, kind)

    def save(self, dataset: Dataset, path: str) -> None:
        header = [f"x{i}" for i in range(1, dataset.m + 1)] + ["y"]
        if dataset.task.is_classification:
            target = [str(int(v)) for v in dataset.target]
        else:
            target = [repr(float(v)) for v in dataset.target]

        directory = os.path.dirname(os.path.abspath(path))
        try:
            os.makedirs(directory, exist_ok=True)
            with atomic_write(path, overwrite=True, newline="") as f:
                writer = csv.writer(f)
                writer.writerow(header)
                for i, column in enumerate(dataset.features.T):
                    writer.writerow([repr(float(v)) for v in column] + [target[i]])
        except OSError as e:
            raise DatasetError(f"Could not write dataset file {path}: {e}.") from e
