"""Provides a report gateway writing CSV, JSON and markdown files."""

__all__ = ["FileReportGateway"]

import csv
import io
import json
import os
from types import SimpleNamespace

from atomicwrites import atomic_write
import numpy as np

from smisel.core.contract.dto.bench import AggregateCell, ReportFormat, TrialReport
from smisel.core.contract.dto.dataset import FeatureIndexSet
from smisel.core.contract.error import ReportError
from smisel.core.contract.gateway.logging import ILoggingGateway
from smisel.core.contract.gateway.report import IReportGateway

CSV_COLUMNS = (
    "method",
    "dataset",
    "trial",
    "seed",
    "k",
    "selected",
    "f_measure",
    "wall_time_s",
    "error",
)


def _jsonable(value):
    """Fallback encoder for numpy values in diagnostics."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, FeatureIndexSet):
        return list(value.indices)
    return str(value)


def _optional_float(text: str) -> float | None:
    return float(text) if text != "" else None


class FileReportGateway(IReportGateway):
    """Writes benchmark reports to local files atomically."""

    def __init__(
        self,
        config: SimpleNamespace,
        logging_gateway: ILoggingGateway,
    ) -> None:
        self._config = config
        self._logging_gateway = logging_gateway

    def emit(
        self,
        reports: list[TrialReport],
        cells: list[AggregateCell],
        fmt: ReportFormat,
        path: str,
        timings: bool = True,
    ) -> str:
        if not reports:
            raise ReportError("No reports to emit.")

        match fmt:
            case ReportFormat.CSV:
                text = self._render_csv(reports, timings)
            case ReportFormat.JSON:
                text = self._render_json(reports, cells, timings)
            case ReportFormat.MARKDOWN:
                text = self._render_markdown(cells)
            case _:
                raise ReportError(f"Unsupported report format: {fmt}.")

        try:
            os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
            with atomic_write(path, overwrite=True, newline="") as f:
                f.write(text)
        except OSError as e:
            raise ReportError(f"Could not write report {path}: {e}.") from e

        self._logging_gateway.info(f"Wrote {fmt.value} report: {path}.")
        return path

    def load(self, path: str) -> list[TrialReport]:
        try:
            with open(path, "r", encoding="utf8", newline="") as f:
                rows = list(csv.DictReader(f))
        except OSError as e:
            raise ReportError(f"Could not read report {path}: {e}.") from e

        reports = []
        for line, row in enumerate(rows, start=2):
            try:
                reports.append(
                    TrialReport(
                        method=row["method"],
                        dataset=row["dataset"],
                        trial=int(row["trial"]),
                        seed=int(row["seed"]),
                        k=int(row["k"]),
                        selected=FeatureIndexSet.parse(row["selected"]),
                        f_measure=_optional_float(row["f_measure"]),
                        wall_time=_optional_float(row["wall_time_s"]),
                        error=row["error"] or None,
                    )
                )
            except (KeyError, TypeError, ValueError) as e:
                raise ReportError(f"Malformed report row at line {line}: {e}.") from e
        return reports

    @staticmethod
    def _render_csv(reports: list[TrialReport], timings: bool) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for report in reports:
            wall_time = report.wall_time if timings else None
            writer.writerow(
                [
                    report.method,
                    report.dataset,
                    report.trial,
                    report.seed,
                    report.k,
                    str(report.selected),
                    "" if report.f_measure is None else repr(report.f_measure),
                    "" if wall_time is None else repr(wall_time),
                    report.error or "",
                ]
            )
        return buffer.getvalue()

    @staticmethod
    def _render_json(
        reports: list[TrialReport], cells: list[AggregateCell], timings: bool
    ) -> str:
        document = {
            "reports": [
                {
                    "method": r.method,
                    "dataset": r.dataset,
                    "trial": r.trial,
                    "seed": r.seed,
                    "k": r.k,
                    "selected": list(r.selected.indices),
                    "f_measure": r.f_measure,
                    "wall_time_s": r.wall_time if timings else None,
                    "error": r.error,
                    "diagnostics": r.diagnostics,
                }
                for r in reports
            ],
            "aggregate": [
                {
                    "method": c.method,
                    "dataset": c.dataset,
                    "mean": c.mean,
                    "std": c.std,
                    "trials": c.trials,
                    "failures": c.failures,
                }
                for c in cells
            ],
        }
        return json.dumps(document, indent=2, default=_jsonable) + "\n"

    @staticmethod
    def _render_markdown(cells: list[AggregateCell]) -> str:
        methods = list(dict.fromkeys(c.method for c in cells))
        datasets = list(dict.fromkeys(c.dataset for c in cells))
        lookup = {(c.method, c.dataset): c for c in cells}

        lines = [
            "| dataset | " + " | ".join(methods) + " |",
            "|---|" + "---|" * len(methods),
        ]
        for dataset in datasets:
            row = []
            for method in methods:
                cell = lookup.get((method, dataset))
                if cell is None or cell.trials == cell.failures:
                    row.append("n/a")
                    continue
                text = f"{cell.mean:.2f} ({cell.std:.2f})"
                if cell.failures:
                    text += f" [{cell.failures} failed]"
                row.append(text)
            lines.append(f"| {dataset} | " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"
