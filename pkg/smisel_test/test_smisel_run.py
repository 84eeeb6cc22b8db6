"""Provides unit tests for the smisel command functions."""

import unittest
import unittest.mock

import numpy as np

from smisel import run_andor_table, run_bench, run_gen, run_lsmi, run_select
from smisel.core.contract.dto.bench import (
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
    TaskKind,
    ToySpec,
)
from smisel.core.contract.error import DatasetError, SmiselError
from smisel.core.di.injector import DependencyInjector


def injector(**providers) -> DependencyInjector:
    """An injector whose logging gateway and given providers are mocks."""
    providers.setdefault("logging_gateway", unittest.mock.Mock())
    return DependencyInjector(**providers)


class TestRunGen(unittest.TestCase):
    """Unit tests for run_gen."""

    def test_generates_and_saves(self):
        """Test that the toy is generated, saved and its truth returned."""
        dataspace = unittest.mock.Mock()
        dataspace.generate_toy.return_value = ("data", FeatureIndexSet((1, 2)))

        truth = run_gen(injector(dataspace_service=dataspace), "xor", 50, 3, "x.csv")

        self.assertEqual(truth, FeatureIndexSet((1, 2)))
        dataspace.generate_toy.assert_called_once_with(ToySpec("xor", 50, 3))
        dataspace.save_csv.assert_called_once_with("data", "x.csv")

    def test_missing_provider(self):
        """Test that a provider that failed to build is an error."""
        with self.assertRaises(SmiselError):
            run_gen(injector(), "xor", 50, 3, "x.csv")


class TestRunSelect(unittest.TestCase):
    """Unit tests for run_select."""

    def test_parses_task(self):
        """Test that the task name is parsed before loading."""
        dataspace, bench = unittest.mock.Mock(), unittest.mock.Mock()
        dataspace.load_csv.return_value = "data"

        run_select(
            injector(dataspace_service=dataspace, bench_service=bench),
            "d.csv",
            "reg",
            "lasso",
            3,
            4,
        )

        dataspace.load_csv.assert_called_once_with("d.csv", TaskKind.REGRESSION)
        bench.select.assert_called_once_with("data", "lasso", 3, 4)

    def test_unknown_task(self):
        """Test that an unknown task name is rejected."""
        with self.assertRaises(DatasetError):
            run_select(
                injector(dataspace_service=unittest.mock.Mock()),
                "d.csv",
                "ranking",
                "pc",
                2,
            )


class TestRunBench(unittest.TestCase):
    """Unit tests for run_bench."""

    def test_one_report_per_format(self):
        """Test that each configured format is emitted and failures logged."""
        cfg = BenchConfig(
            methods=("pc",),
            datasets=(DatasetSource("xor"),),
            formats=(ReportFormat.CSV, ReportFormat.JSON),
        )
        reports = [
            TrialReport("pc", "xor", 0, 1, 2, FeatureIndexSet((1, 2)), 1.0),
            TrialReport("pc", "xor", 1, 2, 2, FeatureIndexSet(), None, error="e"),
        ]

        async def run_benchmark(_cfg):
            return reports, []

        bench = unittest.mock.Mock()
        bench.bench_config.return_value = cfg
        bench.run_benchmark = run_benchmark
        bench.emit_report.side_effect = lambda r, fmt, path, c: path
        container = injector(bench_service=bench)

        paths = run_bench(container, "out")

        self.assertEqual(
            [p.replace("\\", "/") for p in paths], ["out/report.csv", "out/report.json"]
        )
        container.logging_gateway.warning.assert_called_once_with(
            "1 of 2 trials failed."
        )


class TestRunLsmi(unittest.TestCase):
    """Unit tests for run_lsmi."""

    def setUp(self):
        self.dataspace = unittest.mock.Mock()
        self.data = Dataset(np.ones((3, 4)), [1, 2, 1, 2], Task.classification(2))
        self.dataspace.load_csv.return_value = self.data
        self.dataspace.standardize.return_value = (self.data, None)
        self.measure = unittest.mock.Mock()
        self.container = injector(
            dataspace_service=self.dataspace, measure_service=self.measure
        )

    def test_scores_subset(self):
        """Test that the parsed subset of standardized data is scored."""
        self.measure.lsmi_score.return_value = SubsetScore(FeatureIndexSet((1,)), 0.1)

        score = run_lsmi(self.container, "d.csv", "3,1", seed=2)

        self.assertEqual(score.value, 0.1)
        self.measure.lsmi_score.assert_called_once_with(
            self.data, FeatureIndexSet((1, 3)), 2
        )

    def test_out_of_range(self):
        """Test that indices beyond m are rejected."""
        with self.assertRaises(DatasetError):
            run_lsmi(self.container, "d.csv", "1,4")

    def test_empty(self):
        """Test that an empty feature list is rejected."""
        with self.assertRaises(SmiselError):
            run_lsmi(self.container, "d.csv", " , ")


class TestRunAndorTable(unittest.TestCase):
    """Unit tests for run_andor_table."""

    def test_delegates(self):
        """Test that the bench service enumerates the subsets."""
        bench = unittest.mock.Mock()
        bench.enumerate_andor_lsmi.return_value = []

        self.assertEqual(run_andor_table(injector(bench_service=bench), 100, 5), [])
        bench.enumerate_andor_lsmi.assert_called_once_with(100, 5)
