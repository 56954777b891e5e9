# This file is part of tapestry, licensed under the BSD-3-Clause License.
import unittest

import numpy as np

from tapestry.core.exceptions import NormalizationError, ParameterizationError
from tapestry.core.informon import CausalTapestry, Informon, freeze_properties
from tapestry.core.manifold import Lattice, ManifoldPoint
from tapestry.kernels.greens import FREE, TABULATED, GreensFunction
from tapestry.kernels.propagation import (
    SourceIndex,
    lightcone_sources,
    propagate_strength,
    renormalize_tapestry,
)


def prior(sites, strengths=None, properties=None):
    strengths = strengths or [1.0] * len(sites)
    return CausalTapestry(
        0, [Informon(ManifoldPoint(0, (s,)), w, properties) for s, w in zip(sites, strengths)]
    )


class TestLightCone(unittest.TestCase):
    def test_radius(self):
        lattice = Lattice(1, 21, spacing=0.1, tau=0.2, c_hat=1.0)
        tapestry = prior(range(-10, 11))
        sources = lightcone_sources(ManifoldPoint(1, (0,)), tapestry, lattice)
        self.assertEqual(sorted(n.site[0] for n in sources), [-2, -1, 0, 1, 2])

    def test_target_tick(self):
        lattice = Lattice(1, 5)
        with self.assertRaises(ParameterizationError):
            lightcone_sources(ManifoldPoint(2, (0,)), prior([0]), lattice)
        with self.assertRaises(ParameterizationError):
            lightcone_sources(ManifoldPoint(1, (0, 0)), prior([0]), lattice)

    def test_property_filter(self):
        lattice = Lattice(1, 5)
        tagged = CausalTapestry(
            0,
            [
                Informon(ManifoldPoint(0, (0,)), 1.0, {"a": 1}),
                Informon(ManifoldPoint(0, (0,)), 1.0, {"a": 2}),
                Informon(ManifoldPoint(0, (1,)), 1.0),
            ],
        )
        index = SourceIndex(tagged, lattice)
        target = ManifoldPoint(1, (0,))
        self.assertEqual(len(index.sources(target)), 3)
        matching = index.sources(target, freeze_properties({"a": 1}))
        # The untagged informon feeds every primitive
        self.assertEqual(sorted(n.id for n in matching), ["0:0:a=1", "0:1:"])

    def test_empty_prior(self):
        lattice = Lattice(1, 5)
        self.assertEqual(lightcone_sources(ManifoldPoint(1, (0,)), CausalTapestry(0), lattice), [])


class TestPropagation(unittest.TestCase):
    def test_delta_row(self):
        lattice = Lattice(1, 201, spacing=0.1, tau=0.1, c_hat=1000.0)
        kernel = GreensFunction.for_lattice(lattice, FREE)
        source = prior([0])
        for site in (-100, -3, 0, 7, 100):
            target = ManifoldPoint(1, (site,))
            sources = lightcone_sources(target, source, lattice)
            expected = lattice.spacing * complex(kernel.value([site * lattice.spacing]))
            self.assertLess(abs(propagate_strength(target, sources, kernel, lattice) - expected), 1e-12)

    def test_linear_in_sources(self):
        lattice = Lattice(1, 9)
        kernel = GreensFunction(TABULATED, table={(0,): 1.0, (1,): 0.5, (-1,): 0.5})
        tapestry = prior([-1, 0, 1], [1.0, 2j, -1.0])
        target = ManifoldPoint(1, (0,))
        value = propagate_strength(target, list(tapestry), kernel, lattice)
        self.assertAlmostEqual(value, 0.5 * 1.0 + 2j - 0.5)
        self.assertEqual(propagate_strength(target, [], kernel, lattice), 0j)

    def test_index_matches_function(self):
        lattice = Lattice(2, 5, spacing=0.5, tau=0.5, c_hat=3.0)
        kernel = GreensFunction.for_lattice(lattice)
        tapestry = CausalTapestry(
            0, [Informon(ManifoldPoint(0, s), 0.1 * (i + 1)) for i, s in enumerate(lattice.sites())]
        )
        index = SourceIndex(tapestry, lattice)
        target = ManifoldPoint(1, (1, -1))
        direct = propagate_strength(target, lightcone_sources(target, tapestry, lattice), kernel, lattice)
        self.assertAlmostEqual(index.propagate(target, index.within(target), kernel), direct)


class TestRenormalization(unittest.TestCase):
    def test_unit_norm(self):
        lattice = Lattice(1, 5, spacing=0.5)
        tapestry, norm = renormalize_tapestry(prior([0, 1], [3.0, 4j]), lattice)
        self.assertAlmostEqual(norm, 12.5)
        self.assertAlmostEqual(tapestry.norm(lattice), 1.0)
        np.testing.assert_allclose(sorted(np.abs(tapestry.strengths())), [3 / np.sqrt(12.5), 4 / np.sqrt(12.5)])

    def test_zero_tapestry(self):
        with self.assertRaises(NormalizationError):
            renormalize_tapestry(prior([0], [0.0]), Lattice(1, 3))
