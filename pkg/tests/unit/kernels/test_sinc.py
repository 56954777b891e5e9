# This file is part of tapestry, licensed under the BSD-3-Clause License.
import unittest

import numpy as np

from tapestry.core.exceptions import ParameterizationError
from tapestry.kernels.sinc import InterpolationKernel, kernel_value


class TestInterpolationKernel(unittest.TestCase):
    def test_cardinal_property(self):
        rng = np.random.default_rng(7)
        for dimension in (1, 2, 3):
            for spacing in (1.0, 0.1, 0.37):
                kernel = InterpolationKernel(spacing, dimension)
                self.assertEqual(kernel_value(kernel, np.zeros(dimension)), 1.0)
                offsets = rng.integers(-50, 51, size=(200, dimension))
                offsets = offsets[np.any(offsets != 0, axis=1)][:100]
                self.assertEqual(len(offsets), 100)
                values = kernel.value(offsets * spacing)
                self.assertLess(float(np.max(np.abs(values))), 1e-12)

    def test_between_lattice_points(self):
        kernel = InterpolationKernel(0.5)
        self.assertAlmostEqual(kernel_value(kernel, [0.25]), 2 / np.pi)
        plane = InterpolationKernel(0.5, 2)
        self.assertAlmostEqual(kernel_value(plane, [0.25, 0.25]), (2 / np.pi) ** 2)

    def test_vectorized_shape(self):
        kernel = InterpolationKernel(1.0, 2)
        self.assertEqual(kernel.value(np.zeros((4, 3, 2))).shape, (4, 3))

    def test_invalid(self):
        with self.assertRaises(ParameterizationError):
            InterpolationKernel(0.0)
        with self.assertRaises(ParameterizationError):
            InterpolationKernel(1.0, 2).value([0.0, 0.0, 0.0])
