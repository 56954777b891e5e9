# This file is part of tapestry, licensed under the BSD-3-Clause License.
import unittest

from tapestry.algebra.expr import EXCLUSIVE, FREE, Primitive, Product
from tapestry.core.exceptions import IntegrityError
from tapestry.core.informon import CausalTapestry, Informon
from tapestry.core.manifold import Lattice, ManifoldPoint
from tapestry.engine.config import SAMPLED, GenerationConfig
from tapestry.engine.initial import delta_tapestry
from tapestry.engine.tree import enumerate_plays
from tapestry.interpretation.global_interp import GlobalInterpretation, interpret
from tapestry.interpretation.pcm import (
    PcmResult,
    coproduct_decompose,
    coproduct_sum,
    minkowski_sum,
    pcm,
    pcm_coproduct,
    pcm_sum_linearity_check,
)

A1 = Primitive("a1", {"a": 1})
A2 = Primitive("a2", {"a": 2})


def unit_lattice(extent=3):
    lattice = Lattice(1, extent, spacing=1.0, tau=1.0, c_hat=1.0)
    return lattice, GenerationConfig(lattice, regime=SAMPLED, renormalize=False)


class TestPcmResult(unittest.TestCase):
    def test_set_semantics(self):
        first = GlobalInterpretation([[0]], [1.0], 1.0, 1)
        same = GlobalInterpretation([[0]], [1.0 + 1e-12], 1.0, 1)
        other = GlobalInterpretation([[1]], [1.0], 1.0, 1)
        result = PcmResult([first, same, other])
        self.assertEqual(len(result), 2)
        self.assertFalse(result.add(same))
        self.assertTrue(result.contains(other))
        self.assertTrue(PcmResult([first]).issubset(result))
        self.assertFalse(result.issubset(PcmResult([first])))
        self.assertTrue(result.equals(PcmResult([other, first])))
        self.assertEqual(result.strength_vectors(), [[((0,), 1.0)], [((1,), 1.0)]])

    def test_minkowski_sum(self):
        first = PcmResult([GlobalInterpretation([[0]], [1.0], 1.0, 1), GlobalInterpretation([[1]], [1.0], 1.0, 1)])
        second = PcmResult([GlobalInterpretation([[0]], [1.0], 1.0, 1)])
        total = minkowski_sum(first, second)
        self.assertEqual(len(total), 2)
        elements = set(frozenset(i.site_strengths().items()) for i in total)
        self.assertEqual(elements, {frozenset([((0,), 1.0), ((1,), 1.0)]), frozenset([((0,), 2.0)])})


class TestPcm(unittest.TestCase):
    def test_one_element_per_site(self):
        lattice, cfg = unit_lattice()
        result = pcm(enumerate_plays(A1, delta_tapestry(lattice), cfg), lattice)
        self.assertEqual(len(result), 3)
        self.assertEqual(result.provenance, "enumerated")

    def test_linearity_distinct_properties(self):
        lattice, cfg = unit_lattice()
        for mode in (EXCLUSIVE, FREE):
            report = pcm_sum_linearity_check([(1, A1), (1, A2)], delta_tapestry(lattice), cfg, mode)
            self.assertTrue(report.equal, report)
            self.assertEqual(len(report.lhs), 6)

    def test_weighted_linearity(self):
        lattice, cfg = unit_lattice()
        report = pcm_sum_linearity_check([(0.5, A1), (2j, A2)], delta_tapestry(lattice), cfg)
        self.assertTrue(report.equal, report)
        self.assertEqual(len(report.lhs), 9)

    def test_identical_summands(self):
        lattice, cfg = unit_lattice()
        exclusive = pcm_sum_linearity_check([(1, A1), (1, A1)], delta_tapestry(lattice), cfg, EXCLUSIVE)
        self.assertTrue(exclusive.included)
        self.assertFalse(exclusive.equal)
        self.assertEqual(len(exclusive.missing), 3)
        free = pcm_sum_linearity_check([(1, A1), (1, A1)], delta_tapestry(lattice), cfg, FREE)
        self.assertTrue(free.equal)


class TestCoproduct(unittest.TestCase):
    def test_components(self):
        lattice, cfg = unit_lattice()
        tree = enumerate_plays(Product(EXCLUSIVE, [A1, A2]), delta_tapestry(lattice), cfg)
        elements = pcm_coproduct(tree, lattice)
        self.assertEqual(len(elements), 9)
        for (tapestry, components) in zip(tree.distinct_tapestries(), elements):
            self.assertEqual(len(components), 2)
            self.assertEqual([len(c) for c in components], [1, 1])
            self.assertAlmostEqual(coproduct_sum(components).distance(interpret(tapestry, lattice)), 0.0)

    def test_padding_empty_factors(self):
        lattice = Lattice(1, 3)
        tapestry = CausalTapestry(1, [Informon(ManifoldPoint(1, (0,)), 1.0, generator="a@0", slot=0)])
        components = coproduct_decompose(tapestry, lattice, factor_count=3)
        self.assertEqual([len(c) for c in components], [1, 0, 0])

    def test_missing_generator(self):
        tapestry = CausalTapestry(1, [Informon(ManifoldPoint(1, (0,)), 1.0, generator=None)])
        with self.assertRaises(IntegrityError):
            coproduct_decompose(tapestry, Lattice(1, 3))

    def test_empty_sum(self):
        with self.assertRaises(ValueError):
            coproduct_sum([])
