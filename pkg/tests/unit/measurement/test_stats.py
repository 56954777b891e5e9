# This file is part of tapestry, licensed under the BSD-3-Clause License.
import io
import unittest

import numpy as np

from tapestry.core.exceptions import NormalizationError, ParameterizationError
from tapestry.core.informon import CausalTapestry, Informon
from tapestry.core.manifold import Lattice, ManifoldPoint
from tapestry.measurement.stats import (
    Region,
    detection_probability,
    empirical_vs_interpretation,
    interpreted_probability,
    partition,
    region_probabilities,
    regions_from_mapping,
    site_weights,
    write_probabilities,
)
from tapestry.oracle.analytic import gaussian_tapestry


def uniform(sites):
    return CausalTapestry(1, [Informon(ManifoldPoint(1, (s,)), 0.5) for s in sites])


class TestRegion(unittest.TestCase):
    def test_box(self):
        lattice = Lattice(2, 5)
        region = Region.box(lattice, (0, -1), (1, 1), name="right")
        self.assertEqual(len(region), 6)
        self.assertIn((1, -1), region)
        self.assertNotIn((-1, 0), region)
        with self.assertRaises(ParameterizationError):
            Region.box(lattice, (0,), (1,))

    def test_check(self):
        lattice = Lattice(1, 5)
        Region([(2,)]).check(lattice)
        with self.assertRaises(ParameterizationError):
            Region([(3,)], name="far").check(lattice)

    def test_partition(self):
        lattice = Lattice(1, 10)
        cells = partition(lattice, 4)
        self.assertEqual([len(c) for c in cells], [3, 3, 2, 2])
        self.assertEqual([c.name for c in cells], ["cell0", "cell1", "cell2", "cell3"])
        self.assertEqual(set().union(*(c.sites for c in cells)), set(lattice.sites()))
        with self.assertRaises(ParameterizationError):
            partition(Lattice(2, 4), 2)

    def test_from_mapping(self):
        regions = regions_from_mapping(Lattice(1, 9), {"left": ((-4,), (-1,)), "right": ((1,), (4,))})
        self.assertEqual([(r.name, len(r)) for r in regions], [("left", 4), ("right", 4)])


class TestDetectionProbability(unittest.TestCase):
    def test_ratios(self):
        tapestry = uniform(range(4))
        self.assertAlmostEqual(detection_probability(tapestry, Region([(1,)])), 0.25)
        self.assertAlmostEqual(detection_probability(tapestry, Region([(s,) for s in range(4)])), 1.0)
        self.assertEqual(detection_probability(tapestry, Region([])), 0.0)

    def test_additive_and_phase_invariant(self):
        tapestry = gaussian_tapestry(Lattice(1, 32, spacing=0.25), sigma=1.0, k0=1.0)
        left, right = partition(Lattice(1, 32), 2)
        self.assertAlmostEqual(
            detection_probability(tapestry, left) + detection_probability(tapestry, right), 1.0, places=12
        )
        rotated = tapestry.scaled(np.exp(0.7j))
        self.assertAlmostEqual(detection_probability(rotated, left), detection_probability(tapestry, left), places=12)

    def test_monotone(self):
        tapestry = gaussian_tapestry(Lattice(1, 16, spacing=0.5))
        small = Region([(0,), (1,)])
        large = Region([(-1,), (0,), (1,), (2,)])
        self.assertLessEqual(detection_probability(tapestry, small), detection_probability(tapestry, large))

    def test_vanishing(self):
        with self.assertRaises(NormalizationError):
            detection_probability(CausalTapestry(1, [Informon(ManifoldPoint(1, (0,)), 0.0)]), Region([(0,)]))
        with self.assertRaises(NormalizationError):
            detection_probability(CausalTapestry(1), Region([(0,)]))


class TestInterpretedProbability(unittest.TestCase):
    def test_matches_quadrature(self):
        lattice = Lattice(1, 64, spacing=0.2)
        tapestry = gaussian_tapestry(lattice, sigma=1.0, k0=0.0)
        for cell in partition(lattice, 4):
            empirical = detection_probability(tapestry, cell)
            self.assertLess(abs(empirical - interpreted_probability(tapestry, lattice, cell)), 1e-3)

    def test_per_site_report(self):
        lattice = Lattice(1, 64, spacing=0.2)
        report = empirical_vs_interpretation(gaussian_tapestry(lattice, sigma=1.0), lattice)
        self.assertEqual(len(report.per_site), 64)
        self.assertLess(report.max_relative, 1e-2)

    def test_single_informon(self):
        lattice = Lattice(1, 64, spacing=0.2)
        tapestry = CausalTapestry(1, [Informon(ManifoldPoint(1, (0,)), 2.0)])
        report = empirical_vs_interpretation(tapestry, lattice)
        empirical, quadrature = report.per_site[(0,)]
        self.assertAlmostEqual(empirical, 4.0 * 0.2)
        # Most of sinc^2 lies inside the central cell
        self.assertTrue(0.75 < quadrature / empirical < 0.8)

    def test_properties_weigh_separately(self):
        lattice = Lattice(1, 8, spacing=0.5)
        tapestry = CausalTapestry(
            1,
            [
                Informon(ManifoldPoint(1, (0,)), 1.0, {"spin": "up"}),
                Informon(ManifoldPoint(1, (0,)), -1.0, {"spin": "down"}),
                Informon(ManifoldPoint(1, (2,)), 1.0),
            ],
        )
        self.assertEqual(site_weights(tapestry), {(0,): 2.0, (2,): 1.0})
        report = empirical_vs_interpretation(tapestry, lattice)
        self.assertAlmostEqual(report.per_site[(0,)][0], 2.0 * 0.5)
        self.assertAlmostEqual(detection_probability(tapestry, Region([(0,)])), 2.0 / 3.0)

    def test_zero_tapestry(self):
        with self.assertRaises(NormalizationError):
            empirical_vs_interpretation(CausalTapestry(1), Lattice(1, 4))


class TestWriteProbabilities(unittest.TestCase):
    def test_rows(self):
        tapestry = uniform(range(4))
        rows = region_probabilities(tapestry, [Region([(0,), (1,)], name="left"), Region([(3,)])])
        self.assertEqual(rows, [("left", 0.5), ("region1", 0.25)])
        out = io.StringIO()
        write_probabilities(rows, out, header=["tick: 1"])
        self.assertEqual(out.getvalue(), "# tick: 1\n# region\tprobability\nleft\t0.5\nregion1\t0.25\n")
