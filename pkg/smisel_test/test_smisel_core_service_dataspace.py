"""Provides unit tests for smisel.core.service.dataspace."""

from types import SimpleNamespace
import unittest
import unittest.mock

import numpy as np

from smisel.core.contract.dto.dataset import Dataset, FeatureIndexSet, Task, ToySpec
from smisel.core.contract.error import DatasetError
from smisel.core.service.dataspace import DefaultDataspaceService


def dataspace_service(storage=None) -> DefaultDataspaceService:
    """Service with mocked collaborators."""
    return DefaultDataspaceService(
        config=SimpleNamespace(),
        dataset_storage_gateway=storage or unittest.mock.Mock(),
        logging_gateway=unittest.mock.Mock(),
    )


class TestDataspaceStandardize(unittest.TestCase):
    """Unit tests for DefaultDataspaceService.standardize."""

    def test_population_convention(self):
        """Test that (1, 2, 3) maps to (-1.2247, 0, 1.2247)."""
        data = Dataset([[1.0, 2.0, 3.0]], [1, 2, 1], Task.classification(2))

        standardized, stats = dataspace_service().standardize(data)

        np.testing.assert_allclose(
            standardized.features[0], [-1.224744871, 0.0, 1.224744871], atol=1e-9
        )
        self.assertEqual(stats.convention, "population")
        np.testing.assert_array_equal(standardized.target, [1, 2, 1])

    def test_zero_variance_feature(self):
        """Test that a constant row becomes zeros and is flagged."""
        service = dataspace_service()
        data = Dataset(
            [[5.0, 5.0, 5.0], [1.0, 2.0, 4.0]], [0.0, 1.0, 2.0], Task.regression()
        )

        standardized, stats = service.standardize(data)

        np.testing.assert_array_equal(standardized.features[0], [0.0, 0.0, 0.0])
        np.testing.assert_array_equal(stats.zero_variance, [True, False])
        service._logging_gateway.warning.assert_called_once()  # pylint: disable=W0212

    def test_idempotent(self):
        """Test that standardizing twice changes nothing."""
        rng = np.random.default_rng(0)
        data = Dataset(
            rng.normal(3.0, 2.0, (4, 30)), rng.standard_normal(30), Task.regression()
        )
        service = dataspace_service()

        once, _ = service.standardize(data)
        twice, _ = service.standardize(once)

        np.testing.assert_allclose(twice.features, once.features, atol=1e-12)
        np.testing.assert_allclose(twice.target, once.target, atol=1e-12)
        np.testing.assert_allclose(once.features.mean(axis=1), 0.0, atol=1e-12)
        np.testing.assert_allclose(once.features.std(axis=1), 1.0, atol=1e-12)

    def test_regression_target_statistics(self):
        """Test that regression targets are standardized and recorded."""
        data = Dataset([[1.0, 2.0, 3.0]], [2.0, 4.0, 6.0], Task.regression())

        standardized, stats = dataspace_service().standardize(data)

        self.assertAlmostEqual(stats.target_mean, 4.0)
        self.assertAlmostEqual(stats.target_std, np.sqrt(8.0 / 3.0))
        np.testing.assert_allclose(standardized.target, standardized.features[0])


class TestDataspaceGenerateToy(unittest.TestCase):
    """Unit tests for DefaultDataspaceService.generate_toy."""

    def test_and_or_labels(self):
        """Test that and-or labels follow (X1 and X2) or (X3 and X4)."""
        data, truth = dataspace_service().generate_toy(ToySpec("and-or", 500, 11))

        X = data.features.astype(bool)
        expected = (X[0] & X[1]) | (X[2] & X[3])
        np.testing.assert_array_equal(data.target, expected.astype(int) + 1)
        self.assertEqual(truth, FeatureIndexSet((1, 2, 3, 4)))
        self.assertEqual(data.m, 10)

    def test_and_or_flip_rate(self):
        """Test that the redundant copies disagree with Y about 20% of the time."""
        data, _ = dataspace_service().generate_toy(ToySpec("and-or", 4000, 5))

        y = data.target - 1
        rate = np.mean(data.features[7] != y)
        self.assertTrue(0.17 <= rate <= 0.23, rate)

    def test_xor_marginals(self):
        """Test the xor label rule and the biased distractors."""
        data, truth = dataspace_service().generate_toy(ToySpec("xor", 4000, 2))

        X = data.features.astype(bool)
        np.testing.assert_array_equal(data.target, (X[0] ^ X[1]).astype(int) + 1)
        self.assertTrue(0.72 <= data.features[5].mean() <= 0.78)
        self.assertEqual(truth, FeatureIndexSet((1, 2)))

    def test_quad_structure(self):
        """Test the quad target formula up to its noise level."""
        data, truth = dataspace_service().generate_toy(ToySpec("quad", 2000, 4))

        X = data.features
        signal = (X[0] ** 2 + X[1]) / (0.5 + (X[1] + 1.5) ** 2)
        residual = data.target - signal
        self.assertLess(abs(residual.std() - 0.1), 0.01)
        self.assertLessEqual(np.max(np.abs(X[8] - 0.5 * X[0])), 1.0)
        self.assertEqual(data.task, Task.regression())
        self.assertEqual(truth, FeatureIndexSet((1, 2)))

    def test_deterministic(self):
        """Test that the same seed yields the same dataset."""
        service = dataspace_service()
        for name in ("and-or", "quad", "xor"):
            first, _ = service.generate_toy(ToySpec(name, 50, 9))
            second, _ = service.generate_toy(ToySpec(name, 50, 9))
            other, _ = service.generate_toy(ToySpec(name, 50, 10))
            self.assertEqual(first, second)
            self.assertNotEqual(first, other)

    def test_unknown_name(self):
        """Test that an unknown toy name is an error."""
        with self.assertRaises(DatasetError):
            dataspace_service().generate_toy(ToySpec("spiral", 10, 0))


class TestDataspaceMedianPairwiseDistance(unittest.TestCase):
    """Unit tests for DefaultDataspaceService.median_pairwise_distance."""

    def test_examples(self):
        """Test hand-computed medians."""
        service = dataspace_service()

        self.assertEqual(service.median_pairwise_distance(np.array([[0, 1, 3]])), 2.0)
        self.assertEqual(service.median_pairwise_distance(np.array([[2, 2]])), 0.0)
        self.assertEqual(
            service.median_pairwise_distance(np.array([[0, 3], [0, 4]])), 5.0
        )

    def test_even_count_median(self):
        """Test that an even number of distances averages the middle two."""
        # Distances 1, 2, 3, 1, 2, 1.
        points = np.array([[0.0, 1.0, 2.0, 3.0]])

        self.assertEqual(dataspace_service().median_pairwise_distance(points), 1.5)

    def test_invariances(self):
        """Test invariance under permutation and translation."""
        rng = np.random.default_rng(1)
        points = rng.standard_normal((3, 20))
        service = dataspace_service()
        reference = service.median_pairwise_distance(points)

        self.assertAlmostEqual(
            service.median_pairwise_distance(points[:, rng.permutation(20)]),
            reference,
        )
        self.assertAlmostEqual(
            service.median_pairwise_distance(points + 7.5), reference
        )

    def test_single_point(self):
        """Test that fewer than two points is an error."""
        with self.assertRaises(DatasetError):
            dataspace_service().median_pairwise_distance(np.array([[1.0]]))


class TestDataspaceStorageDelegation(unittest.TestCase):
    """Unit tests for CSV delegation to the storage gateway."""

    def test_load_and_save(self):
        """Test that load and save use the dataset storage gateway."""
        storage = unittest.mock.Mock()
        service = dataspace_service(storage)

        loaded = service.load_csv("in.csv", "class")
        service.save_csv(loaded, "out.csv")

        storage.load.assert_called_once_with("in.csv", "class")
        storage.save.assert_called_once_with(storage.load.return_value, "out.csv")
