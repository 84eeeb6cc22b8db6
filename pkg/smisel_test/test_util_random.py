"""Provides unit tests for smisel_util.random."""

import unittest

import numpy as np

from smisel_util.random import child_seed, generator


class TestGenerator(unittest.TestCase):
    """Unit tests for generator."""

    def test_reproducible(self):
        """Test that equal seeds give equal streams."""
        np.testing.assert_array_equal(
            generator(42).normal(size=8), generator(42).normal(size=8)
        )

    def test_wide_seed(self):
        """Test that seeds beyond 64 bits are folded rather than rejected."""
        np.testing.assert_array_equal(
            generator(2**64 + 5).random(3), generator(5).random(3)
        )


class TestChildSeed(unittest.TestCase):
    """Unit tests for child_seed."""

    def test_stable(self):
        """Test that the same path gives the same seed."""
        self.assertEqual(
            child_seed(0, "method", "pc", "xor", 3),
            child_seed(0, "method", "pc", "xor", 3),
        )

    def test_keys_distinguish(self):
        """Test that parents, keys and key order change the seed."""
        seeds = {
            child_seed(0, "data", "xor", 0),
            child_seed(1, "data", "xor", 0),
            child_seed(0, "data", "xor", 1),
            child_seed(0, "data", "quad", 0),
            child_seed(0, "xor", "data", 0),
        }

        self.assertEqual(len(seeds), 5)

    def test_range(self):
        """Test that seeds are unsigned 64-bit integers."""
        seed = child_seed(123, "restart", 7)

        self.assertIsInstance(seed, int)
        self.assertTrue(0 <= seed < 2**64)
