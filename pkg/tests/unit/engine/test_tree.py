# This file is part of tapestry, licensed under the BSD-3-Clause License.
import unittest

from tapestry.algebra.expr import EXCLUSIVE, FREE, Primitive, Product, Sum
from tapestry.core.exceptions import CapacityError, EnumerationError, ParameterizationError
from tapestry.core.manifold import Lattice
from tapestry.engine.config import SAMPLED, GenerationConfig
from tapestry.engine.initial import delta_tapestry
from tapestry.engine.tree import ENUMERATED, SequenceTree, enumerate_plays, sample_plays
from tapestry.engine.tree import SAMPLED as SAMPLED_TREE

A, B = Primitive("a"), Primitive("b")


def sampled_config(extent, **kwargs):
    lattice = Lattice(1, extent)
    return lattice, GenerationConfig(lattice, regime=SAMPLED, **kwargs)


class TestEnumeration(unittest.TestCase):
    def test_site_choices(self):
        lattice, cfg = sampled_config(3)
        tree = enumerate_plays(A, delta_tapestry(lattice), cfg)
        self.assertEqual(tree.provenance, ENUMERATED)
        self.assertEqual(len(tree), 3)
        self.assertEqual(len(tree.root.children), 3)
        self.assertEqual(len(tree.distinct_tapestries()), 3)

    def test_orderings_collapse(self):
        lattice, cfg = sampled_config(3, n=2)
        tree = enumerate_plays(A, delta_tapestry(lattice), cfg)
        self.assertEqual(len(tree), 6)
        self.assertEqual(len(tree.leaves()), 6)
        self.assertEqual(len(tree.distinct_tapestries()), 3)
        for leaf in tree.leaves():
            self.assertEqual(leaf.depth, 2)
            self.assertEqual(len(leaf.path()), 2)
            self.assertEqual(len(leaf.plays), 1)

    def test_summand_choices(self):
        lattice, cfg = sampled_config(3)
        tree = enumerate_plays(Sum(EXCLUSIVE, [(1, A), (1, B)]), delta_tapestry(lattice), cfg)
        # One emission step: either summand on any of the 3 sites
        self.assertEqual(len(tree.root.children), 2 * 3)
        for node in tree.root.children.values():
            self.assertEqual(len(node.path()), 1)
        # Each summand still emits its own informon; exclusivity keeps them apart
        self.assertEqual(len(tree.leaves()), 2 * 3 * 2)
        for play in tree.plays:
            self.assertEqual(len(play.events), 2)
            sites = [event.informon.site for event in play.events]
            self.assertEqual(len(set(sites)), 2)

    def test_free_sum_allows_sharing(self):
        lattice, cfg = sampled_config(2)
        tree = enumerate_plays(Sum(FREE, [(1, A), (1, B)]), delta_tapestry(lattice), cfg)
        self.assertEqual(len(tree), 8)
        self.assertEqual(min(len(play.tapestry) for play in tree.plays), 1)

    def test_exhaustive_has_one_play(self):
        lattice = Lattice(1, 5)
        tree = enumerate_plays(A, delta_tapestry(lattice), GenerationConfig(lattice))
        self.assertEqual(len(tree), 1)
        self.assertEqual(len(tree.maximal_tapestries()[0]), 5)

    def test_budget(self):
        lattice, cfg = sampled_config(3, budget=2)
        with self.assertRaises(EnumerationError) as context:
            enumerate_plays(A, delta_tapestry(lattice), cfg)
        self.assertEqual(context.exception.exit_code, 8)

    def test_every_branch_blocked(self):
        lattice, cfg = sampled_config(1)
        with self.assertRaises(CapacityError):
            enumerate_plays(Product(EXCLUSIVE, [A, B]), delta_tapestry(lattice), cfg)

    def test_product_metadata(self):
        lattice, cfg = sampled_config(3)
        tree = enumerate_plays(Product(EXCLUSIVE, [A, B]), delta_tapestry(lattice), cfg)
        self.assertEqual(tree.product_mode, EXCLUSIVE)
        self.assertEqual(tree.factor_count, 2)
        self.assertEqual(len(tree), 6)


class TestSampling(unittest.TestCase):
    def test_reproducible(self):
        lattice, cfg = sampled_config(20, n=3, seed=5)
        initial = delta_tapestry(lattice)

        def sites(plays):
            return [[event.informon.site for event in play.events] for play in plays]

        first = sample_plays(A, initial, cfg, 10)
        self.assertEqual(sites(first), sites(sample_plays(A, initial, cfg, 10)))
        self.assertNotEqual(sites(first), sites(sample_plays(A, initial, cfg, 10, seed=6)))
        # Play i depends only on (seed, i)
        self.assertEqual(sites(first[:4]), sites(sample_plays(A, initial, cfg, 4)))
        self.assertEqual([play.index for play in first], list(range(10)))

    def test_tree_from_samples(self):
        lattice, cfg = sampled_config(5)
        plays = sample_plays(A, delta_tapestry(lattice), cfg, 8)
        tree = SequenceTree.from_plays(A, delta_tapestry(lattice), plays)
        self.assertEqual(tree.provenance, SAMPLED_TREE)
        self.assertEqual(len(tree), 8)
        self.assertLessEqual(len(tree.leaves()), 5)
        self.assertEqual(sum(len(leaf.plays) for leaf in tree.leaves()), 8)

    def test_count(self):
        lattice, cfg = sampled_config(3)
        with self.assertRaises(ParameterizationError):
            sample_plays(A, delta_tapestry(lattice), cfg, 0)
