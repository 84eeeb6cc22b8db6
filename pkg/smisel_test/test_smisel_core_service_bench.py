"""Provides unit tests for smisel.core.service.bench."""

import os
from types import SimpleNamespace
import tempfile
import unittest
import unittest.mock

import numpy as np

from smisel.core.contract.dto.bench import (
    BenchConfig,
    DatasetSource,
    ReportFormat,
    TrialReport,
)
from smisel.core.contract.dto.dataset import (
    Dataset,
    FeatureIndexSet,
    Task,
    TaskKind,
    ToySpec,
)
from smisel.core.contract.error import SelectionError, SmiselError
from smisel.core.gateway.report.file import FileReportGateway
from smisel_test.services import build_services, namespace


def fset(*indices: int) -> FeatureIndexSet:
    """Shorthand for a feature index set."""
    return FeatureIndexSet.of(indices)


def cheap_config(**kwargs) -> BenchConfig:
    """A small benchmark of fast selectors on the toy datasets."""
    settings = {
        "methods": ("pc", "mrmr", "relieff"),
        "datasets": tuple(DatasetSource(name) for name in ("and-or", "quad", "xor")),
        "trials": 3,
        "n": 120,
        "master_seed": 7,
        "timings": False,
    }
    settings.update(kwargs)
    return BenchConfig(**settings)


class TestFMeasure(unittest.TestCase):
    """Unit tests for DefaultBenchService.f_measure."""

    def setUp(self):
        self.bench = build_services().bench

    def test_examples(self):
        """Test harmonic means of precision and recall."""
        self.assertEqual(self.bench.f_measure(fset(1, 2), fset(1, 2)), 1.0)
        self.assertAlmostEqual(
            self.bench.f_measure(fset(1, 2, 4), fset(1, 2, 3, 4, 5, 6)), 2 / 3
        )
        self.assertAlmostEqual(
            self.bench.f_measure(fset(1, 7, 8, 9), fset(1, 2, 3, 4)), 0.25
        )
        self.assertEqual(self.bench.f_measure(fset(5, 6), fset(1, 2)), 0.0)
        self.assertEqual(self.bench.f_measure(fset(), fset(1, 2)), 0.0)

    def test_symmetric(self):
        """Test that swapping the sets does not change the value."""
        a, b = fset(1, 3, 5), fset(1, 2, 3, 4)
        self.assertAlmostEqual(self.bench.f_measure(a, b), self.bench.f_measure(b, a))

    def test_empty_truth(self):
        """Test that an empty true set is rejected."""
        with self.assertRaises(SmiselError):
            self.bench.f_measure(fset(1), fset())


class TestAggregate(unittest.TestCase):
    """Unit tests for DefaultBenchService.aggregate."""

    def test_failures_excluded_from_mean(self):
        """Test mean and std over successful trials, with failures counted."""
        bench = build_services().bench
        reports = [
            TrialReport("pc", "xor", 0, 1, 2, fset(1, 2), 1.0),
            TrialReport("pc", "xor", 1, 2, 2, fset(1, 3), 0.5),
            TrialReport("pc", "xor", 2, 3, 2, fset(), None, error="SelectionError: x"),
            TrialReport("pc", "quad", 0, 4, 2, fset(1, 2), 1.0),
        ]

        cells = bench.aggregate(reports)

        self.assertEqual(
            [(c.method, c.dataset) for c in cells], [("pc", "xor"), ("pc", "quad")]
        )
        self.assertAlmostEqual(cells[0].mean, 0.75)
        self.assertAlmostEqual(cells[0].std, 0.25)
        self.assertEqual((cells[0].trials, cells[0].failures), (3, 1))

    def test_all_failed(self):
        """Test that a cell with no successful trial has no mean."""
        bench = build_services().bench
        reports = [TrialReport("relieff", "quad", 0, 1, 2, fset(), None, error="e")]

        cell = bench.aggregate(reports)[0]

        self.assertTrue(np.isnan(cell.mean))
        self.assertEqual(cell.failures, 1)


class TestBenchConfig(unittest.TestCase):
    """Unit tests for DefaultBenchService.bench_config."""

    def test_defaults(self):
        """Test the defaults without a bench section."""
        cfg = build_services().bench.bench_config()

        self.assertEqual(len(cfg.methods), 11)
        self.assertEqual([s.name for s in cfg.datasets], ["and-or", "quad", "xor"])
        self.assertEqual((cfg.trials, cfg.n, cfg.parallelism), (10, 400, 1))
        self.assertEqual(cfg.formats, (ReportFormat.CSV, ReportFormat.MARKDOWN))
        self.assertFalse(cfg.timings)

    def test_mixed_datasets(self):
        """Test toy names mixed with CSV dataset tables."""
        config = namespace(
            bench={
                "methods": ["pc", "lasso"],
                "datasets": [
                    "xor",
                    {
                        "name": "mine",
                        "path": "/data/mine.csv",
                        "task": "reg",
                        "k": 3,
                        "truth": [4, 2],
                    },
                ],
                "trials": 2,
                "parallelism": 4,
                "formats": ["json"],
                "timings": "record",
            }
        )

        cfg = build_services(config).bench.bench_config()

        self.assertEqual(cfg.methods, ("pc", "lasso"))
        self.assertTrue(cfg.datasets[0].is_toy)
        mine = cfg.datasets[1]
        self.assertFalse(mine.is_toy)
        self.assertEqual(mine.task, TaskKind.REGRESSION)
        self.assertEqual((mine.k, mine.truth), (3, fset(2, 4)))
        self.assertEqual(cfg.formats, (ReportFormat.JSON,))
        self.assertTrue(cfg.timings)

    def test_invalid_trials(self):
        """Test that zero trials is rejected."""
        bench = build_services(namespace(bench={"trials": 0})).bench

        with self.assertRaises(SmiselError):
            bench.bench_config()


class TestSelect(unittest.TestCase):
    """Unit tests for DefaultBenchService.select."""

    def setUp(self):
        self.services = build_services()
        self.data, _ = self.services.dataspace.generate_toy(ToySpec("xor", 60, 1))

    def test_dispatch_standardizes(self):
        """Test that a baseline receives standardized data and k."""
        with unittest.mock.patch.object(
            self.services.baseline, "rank_pearson"
        ) as rank_pearson:
            self.services.bench.select(self.data, "pc", 2)

        data, k = rank_pearson.call_args.args
        expected, _ = self.services.dataspace.standardize(self.data)
        self.assertEqual(data, expected)
        self.assertEqual(k, 2)

    def test_sequential_dispatch(self):
        """Test that sequential methods map to direction and measure."""
        with unittest.mock.patch.object(
            self.services.baseline,
            "sequential_search",
            return_value=("result", "trace"),
        ) as sequential_search:
            result = self.services.bench.select(self.data, "bhsic", 2, 9)

        self.assertEqual(result, "result")
        direction, measure, seed = sequential_search.call_args.args[2:]
        self.assertEqual(
            (direction.value, measure.value, seed), ("backward", "hsic", 9)
        )

    def test_unknown_method(self):
        """Test that an unknown method name is rejected."""
        with self.assertRaises(SelectionError):
            self.services.bench.select(self.data, "boruta", 2)

    def test_real_selector(self):
        """Test that a real selector returns k features."""
        result = self.services.bench.select(self.data, "pc", 3)

        self.assertEqual(len(result.selected), 3)


class TestRunBenchmark(unittest.IsolatedAsyncioTestCase):
    """Unit tests for DefaultBenchService.run_benchmark."""

    async def test_single_cell(self):
        """Test one method on one dataset over two trials."""
        services = build_services()
        cfg = cheap_config(methods=("pc",), datasets=(DatasetSource("xor"),), trials=2)

        reports, cells = await services.bench.run_benchmark(cfg)

        self.assertEqual([r.trial for r in reports], [0, 1])
        self.assertNotEqual(reports[0].seed, reports[1].seed)
        self.assertTrue(all(r.k == 2 and len(r.selected) == 2 for r in reports))
        self.assertTrue(all(0.0 <= r.f_measure <= 1.0 for r in reports))
        self.assertEqual(len(cells), 1)
        self.assertEqual(cells[0].trials, 2)

    async def test_unknown_method(self):
        """Test that unknown methods are rejected before any trial runs."""
        services = build_services()

        with self.assertRaises(SelectionError):
            await services.bench.run_benchmark(cheap_config(methods=("pc", "boruta")))

    async def test_csv_dataset_needs_k(self):
        """Test that a CSV dataset without k is rejected."""
        services = build_services()
        source = DatasetSource("mine", path="/data/mine.csv", task=TaskKind.REGRESSION)

        with self.assertRaises(SmiselError):
            await services.bench.run_benchmark(cheap_config(datasets=(source,)))

    async def test_csv_dataset_without_truth(self):
        """Test that a CSV dataset without true features has no F-measure."""
        services = build_services()
        rng = np.random.default_rng(0)
        storage = services.dataspace._dataset_storage_gateway  # pylint: disable=W0212
        storage.load.return_value = Dataset(
            rng.normal(size=(5, 40)), rng.normal(size=40), Task.regression()
        )
        source = DatasetSource(
            "mine", path="/data/mine.csv", task=TaskKind.REGRESSION, k=2
        )

        reports, _ = await services.bench.run_benchmark(
            cheap_config(methods=("pc",), datasets=(source,), trials=1)
        )

        self.assertEqual(len(reports[0].selected), 2)
        self.assertIsNone(reports[0].f_measure)

    async def test_failed_trial_recorded(self):
        """Test that a selector error becomes a failed report."""
        services = build_services()
        cfg = cheap_config(methods=("relieff",), datasets=(DatasetSource("quad"),))

        reports, cells = await services.bench.run_benchmark(cfg)

        self.assertTrue(all(r.failed for r in reports))
        self.assertTrue(reports[0].error.startswith("SelectionError"))
        self.assertIsNone(reports[0].f_measure)
        self.assertEqual(cells[0].failures, 3)
        services.logger.warning.assert_called()

    async def test_unexpected_error_recorded(self):
        """Test that any exception in a trial becomes a failed report."""
        services = build_services()
        cfg = cheap_config(methods=("pc",), datasets=(DatasetSource("xor"),), trials=2)

        with unittest.mock.patch.object(
            services.bench, "select", side_effect=KeyError("boom")
        ):
            reports, cells = await services.bench.run_benchmark(cfg)

        self.assertTrue(all(r.failed for r in reports))
        self.assertTrue(reports[0].error.startswith("KeyError"))
        self.assertEqual(cells[0].failures, 2)

    async def test_data_seed_regenerates_trial(self):
        """Test that the recorded data seed reproduces a trial."""
        services = build_services()
        cfg = cheap_config(methods=("pc",), datasets=(DatasetSource("xor"),), trials=2)

        reports, _ = await services.bench.run_benchmark(cfg)

        seeds = [r.diagnostics["data_seed"] for r in reports]
        self.assertNotEqual(seeds[0], seeds[1])
        for report, seed in zip(reports, seeds):
            data, _ = services.dataspace.generate_toy(ToySpec("xor", 120, seed))
            result = services.bench.select(data, "pc", 2, report.seed)
            self.assertEqual(result.selected, report.selected)

    async def test_parallelism_does_not_change_results(self):
        """Test that serial and parallel runs emit identical CSV reports."""
        config = namespace(
            search={"restarts": 2, "max_iters": 5, "max_solves": 4},
            measure={
                "basis": 20,
                "cv": SimpleNamespace(sigma_scales=[0.5, 1.0], lambdas=[0.1], folds=2),
            },
        )
        with tempfile.TemporaryDirectory() as tmp:
            paths = []
            for parallelism in (1, 4):
                report = FileReportGateway(
                    config=SimpleNamespace(), logging_gateway=unittest.mock.Mock()
                )
                services = build_services(config, report=report)
                cfg = cheap_config(
                    methods=("pc", "mrmr", "relieff", "l1lsmi"),
                    parallelism=parallelism,
                )
                reports, _ = await services.bench.run_benchmark(cfg)
                paths.append(
                    services.bench.emit_report(
                        reports,
                        ReportFormat.CSV,
                        os.path.join(tmp, f"p{parallelism}.csv"),
                        cfg,
                    )
                )

            contents = []
            for path in paths:
                with open(path, "rb") as f:
                    contents.append(f.read())

        self.assertEqual(contents[0], contents[1])

    async def test_adding_a_method_keeps_other_results(self):
        """Test that results of one method do not depend on the method list."""
        services = build_services()

        alone, _ = await services.bench.run_benchmark(cheap_config(methods=("pc",)))
        mixed, _ = await services.bench.run_benchmark(
            cheap_config(methods=("mrmr", "pc"))
        )

        self.assertEqual(alone, [r for r in mixed if r.method == "pc"])


class TestEmitReport(unittest.TestCase):
    """Unit tests for DefaultBenchService.emit_report."""

    def test_delegates_with_aggregate(self):
        """Test that the gateway receives the aggregate and timing setting."""
        services = build_services()
        services.report.emit.return_value = "/out/report.md"
        reports = [TrialReport("pc", "xor", 0, 1, 2, fset(1, 2), 1.0)]
        cfg = cheap_config(methods=("pc",), datasets=(DatasetSource("xor"),))

        path = services.bench.emit_report(
            reports, ReportFormat.MARKDOWN, "/out/report.md", cfg
        )

        self.assertEqual(path, "/out/report.md")
        args, kwargs = services.report.emit.call_args
        self.assertEqual(args[1][0].mean, 1.0)
        self.assertEqual(args[2], ReportFormat.MARKDOWN)
        self.assertFalse(kwargs["timings"])


class TestEnumerateAndorLsmi(unittest.TestCase):
    """Unit tests for DefaultBenchService.enumerate_andor_lsmi."""

    def setUp(self):
        cv = SimpleNamespace(sigma_scales=[0.5, 1.0], lambdas=[0.1], folds=2)
        self.bench = build_services(namespace(measure={"basis": 20, "cv": cv})).bench

    def test_all_subsets_sorted(self):
        """Test that every 4-subset of the pool is scored in descending order."""
        scores = self.bench.enumerate_andor_lsmi(60, 3)

        self.assertEqual(len(scores), 35)
        self.assertEqual(len({s.features for s in scores}), 35)
        values = [s.value for s in scores]
        self.assertEqual(values, sorted(values, reverse=True))
        for score in scores:
            self.assertEqual(len(score.features), 4)
            self.assertTrue(set(score.features) <= {1, 2, 3, 4, 8, 9, 10})

    def test_too_few_samples(self):
        """Test that fewer than 50 samples is rejected."""
        with self.assertRaises(SmiselError):
            self.bench.enumerate_andor_lsmi(49, 0)
