# This file is part of tapestry, licensed under the BSD-3-Clause License.
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from tapestry.algebra.expr import (
    BOSONIC,
    EXCLUSIVE,
    FERMIONIC,
    FIELD_LIKE,
    FREE,
    MODES,
    PARTICLE_LIKE,
    ZERO,
    Concat,
    Primitive,
    Product,
    Sum,
    exclusive_product,
    exclusive_sum,
    fock_level,
    fock_space,
    free_product,
    free_sum,
    grade,
    is_graded,
    primitives,
    regime_of,
    scale,
    simplify,
)
from tapestry.algebra.parser import parse, render
from tapestry.core.exceptions import GradingError

A, B, C = Primitive("a"), Primitive("b"), Primitive("c")

weights = st.sampled_from([1, 0.5, -2.0, 1j, 0.25 + 0.5j])
leaves = st.one_of(st.sampled_from([A, B, C]), st.just(ZERO))


def _extend(children):
    return st.one_of(
        st.builds(Sum, st.sampled_from(MODES), st.lists(st.tuples(weights, children), min_size=1, max_size=3)),
        st.builds(Product, st.sampled_from(MODES), st.lists(children, min_size=2, max_size=3)),
    )


expressions = st.recursive(leaves, _extend, max_leaves=8)


class TestNormalForm(unittest.TestCase):
    @given(expressions)
    @settings(max_examples=200, deadline=None)
    def test_idempotent(self, expr):
        once = simplify(expr)
        self.assertEqual(simplify(once), once)

    @given(st.sampled_from(MODES), st.lists(st.tuples(weights, expressions), min_size=2, max_size=4))
    @settings(max_examples=100, deadline=None)
    def test_sums_are_abelian(self, mode, terms):
        self.assertEqual(simplify(Sum(mode, terms)), simplify(Sum(mode, list(reversed(terms)))))

    @given(st.sampled_from(MODES), st.lists(expressions, min_size=2, max_size=4))
    @settings(max_examples=100, deadline=None)
    def test_products_are_abelian(self, mode, factors):
        self.assertEqual(simplify(Product(mode, factors)), simplify(Product(mode, list(reversed(factors)))))

    @given(expressions)
    @settings(max_examples=200, deadline=None)
    def test_render_round_trip(self, expr):
        normal = simplify(expr)
        self.assertEqual(simplify(parse(render(normal))), normal)

    def test_zero_is_additive_identity(self):
        for mode in MODES:
            self.assertEqual(simplify(Sum(mode, [(1, A), (0.5, ZERO)])), A)
        self.assertEqual(simplify(exclusive_sum(ZERO, ZERO)), ZERO)

    def test_products_keep_zero(self):
        product = simplify(exclusive_product(A, ZERO))
        self.assertIsInstance(product, Product)
        self.assertIn(ZERO, product.factors)

    def test_flattening(self):
        nested = free_sum(A, free_sum(B, C))
        self.assertEqual(simplify(nested), simplify(free_sum(C, B, A)))
        self.assertEqual(len(simplify(nested).terms), 3)
        # Different modes stay nested
        mixed = simplify(exclusive_sum(A, free_sum(B, C)))
        self.assertEqual(len(mixed.terms), 2)
        self.assertEqual(simplify(free_product(A, free_product(B, C))), simplify(free_product(A, B, C)))

    def test_weights_merge(self):
        self.assertEqual(scale(2, scale(0.5j, A)), simplify(Sum(EXCLUSIVE, [(1j, A)])))
        self.assertEqual(scale(1, A), A)
        distributed = scale(2, free_sum(A, B))
        self.assertEqual(distributed.mode, FREE)
        self.assertEqual([w for w, _ in distributed.terms], [2, 2])

    def test_concat_keeps_order(self):
        first = simplify(Concat([A, Concat([B, C])]))
        self.assertEqual(first.parts, (A, B, C))
        self.assertNotEqual(simplify(Concat([A, B])), simplify(Concat([B, A])))

    def test_equality_is_structural(self):
        self.assertEqual(Primitive("a", {"k": 1}), Primitive("a", {"k": "1"}))
        self.assertNotEqual(Primitive("a"), Primitive("a", n=2))
        self.assertNotEqual(Primitive("a"), Primitive("a", kernel="lattice"))
        self.assertEqual(len({A, Primitive("a"), B}), 2)

    def test_invalid_mode(self):
        with self.assertRaises(ValueError):
            Sum("quantum", [(1, A)])
        with self.assertRaises(ValueError):
            Product("quantum", [A, B])


class TestFieldSubalgebra(unittest.TestCase):
    def test_levels(self):
        states = [A, B]
        self.assertEqual(fock_level(states, 0), ZERO)
        self.assertEqual(fock_level(states, 1), simplify(exclusive_sum(A, B)))
        self.assertEqual(fock_level(states, 2, BOSONIC).mode, FREE)
        self.assertEqual(fock_level(states, 2, FERMIONIC).mode, EXCLUSIVE)
        for k in range(1, 5):
            self.assertEqual(grade(fock_level(states, k)), k)

    def test_invalid_levels(self):
        with self.assertRaises(ValueError):
            fock_level([], 1)
        with self.assertRaises(ValueError):
            fock_level([A], -1)
        with self.assertRaises(ValueError):
            fock_level([A], 1, "anyonic")

    def test_fock_space_spans_grades(self):
        space = fock_space([A, B], 2)
        self.assertFalse(is_graded(space))
        with self.assertRaises(GradingError):
            grade(space)


class TestGrade(unittest.TestCase):
    def test_grade(self):
        self.assertEqual(grade(ZERO), 0)
        self.assertEqual(grade(A), 1)
        self.assertEqual(grade(exclusive_product(A, free_product(B, C))), 3)
        self.assertEqual(grade(exclusive_sum(A, (0.5, B))), 1)
        self.assertEqual(grade(exclusive_sum(A, ZERO)), 1)
        with self.assertRaises(GradingError):
            grade(exclusive_sum(A, exclusive_product(B, C)))
        with self.assertRaises(GradingError):
            grade(Concat([A, B]))

    def test_regime(self):
        self.assertEqual(regime_of(A, 1, 10), PARTICLE_LIKE)
        self.assertEqual(regime_of(A, 5, 10), PARTICLE_LIKE)
        self.assertEqual(regime_of(A, 6, 10), FIELD_LIKE)
        self.assertEqual(regime_of(exclusive_product(A, B), 3, 10), FIELD_LIKE)

    def test_primitives(self):
        self.assertEqual(primitives(free_sum(A, exclusive_product(B, A))), [A, B, A])
        self.assertEqual(primitives(ZERO), [])
