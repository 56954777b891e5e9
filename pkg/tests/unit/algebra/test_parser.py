# This file is part of tapestry, licensed under the BSD-3-Clause License.
import unittest

from tapestry.algebra.expr import EXCLUSIVE, FREE, ZERO, Concat, Primitive, Product, Sum, simplify
from tapestry.algebra.parser import parse, render, render_weight, tokenize
from tapestry.core.exceptions import ExpressionSyntaxError, UnknownPrimitiveError


class TestTokenize(unittest.TestCase):
    def test_tokens(self):
        tokens = tokenize("0.5*a (+^) [1-2j]*b (x) c")
        self.assertEqual(
            [(t.kind, t.text) for t in tokens],
            [
                ("number", "0.5"),
                ("punct", "*"),
                ("name", "a"),
                ("op", "(+^)"),
                ("complex", "[1-2j]"),
                ("punct", "*"),
                ("name", "b"),
                ("op", "(x)"),
                ("name", "c"),
            ],
        )
        self.assertEqual(tokens[2].column, 5)

    def test_bad_character(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            tokenize("a & b", lineno=7)
        self.assertEqual(context.exception.lineno, 7)
        self.assertIn("column 3", str(context.exception))


class TestParse(unittest.TestCase):
    def test_operators(self):
        a, b = Primitive("a"), Primitive("b")
        self.assertEqual(parse("a (+) b"), Sum(EXCLUSIVE, [(1, a), (1, b)]))
        self.assertEqual(parse("a (+^) b"), Sum(FREE, [(1, a), (1, b)]))
        self.assertEqual(parse("a (x) b"), Product(EXCLUSIVE, [a, b]))
        self.assertEqual(parse("a (x^) b"), Product(FREE, [a, b]))
        self.assertEqual(parse("a ; b"), Concat([a, b]))
        self.assertEqual(parse("0"), ZERO)

    def test_products_bind_tighter(self):
        a, b, c = Primitive("a"), Primitive("b"), Primitive("c")
        self.assertEqual(parse("a (+) b (x) c"), Sum(EXCLUSIVE, [(1, a), (1, Product(EXCLUSIVE, [b, c]))]))
        self.assertEqual(parse("(a (+) b) (x) c"), Product(EXCLUSIVE, [Sum(EXCLUSIVE, [(1, a), (1, b)]), c]))

    def test_weights(self):
        a, b = Primitive("a"), Primitive("b")
        self.assertEqual(parse("2*a"), Sum(EXCLUSIVE, [(2, a)]))
        self.assertEqual(parse("-0.5*a (+^) [1j]*b"), Sum(FREE, [(-0.5, a), (1j, b)]))
        self.assertEqual(parse("[0.5 + 0.5j] * a"), Sum(EXCLUSIVE, [(0.5 + 0.5j, a)]))
        self.assertEqual(parse("2*a (x) b"), Product(EXCLUSIVE, [Sum(EXCLUSIVE, [(2, a)]), b]))
        self.assertEqual(parse(".5*a (+) -.25*b"), Sum(EXCLUSIVE, [(0.5, a), (-0.25, b)]))
        self.assertEqual(parse("1e-1*a"), Sum(EXCLUSIVE, [(0.1, a)]))

    def test_declared_primitives(self):
        declared = {"up": Primitive("up", {"spin": "up"}, n=2)}
        expr = parse("up (x^) up", declared)
        self.assertIs(expr.factors[0], declared["up"])
        with self.assertRaises(UnknownPrimitiveError) as context:
            parse("up (+) down", declared, lineno=12)
        self.assertEqual(context.exception.lineno, 12)
        self.assertIn("down", str(context.exception))

    def test_syntax_errors(self):
        invalid_cases = (
            "",
            "a (+)",
            "a (+) b (+^) c",
            "a (x) b (x^) c",
            "(a (+) b",
            "a b",
            "3",
            "x (x) a",
            "[oops]*a",
            "2 * ",
        )
        for text in invalid_cases:
            with self.assertRaises(ExpressionSyntaxError):
                parse(text, lineno=3)


class TestRender(unittest.TestCase):
    def test_render(self):
        cases = (
            "a (+) b",
            "0.5*a (+^) [1j]*b",
            "(a (+) b) (x^) c",
            "a (x) b (+) c",
            "a ; b",
        )
        for text in cases:
            expr = simplify(parse(text))
            self.assertEqual(simplify(parse(render(expr))), expr)
        self.assertEqual(render(parse("a (+) (b (+^) c)")), "a (+) (b (+^) c)")
        self.assertEqual(render(ZERO), "0")

    def test_render_weight(self):
        self.assertEqual(render_weight(2), "2.0")
        self.assertEqual(render_weight(0.5j), "[0.5j]")
        self.assertEqual(complex(render_weight(1 + 2j)[1:-1]), 1 + 2j)

    def test_repr(self):
        self.assertEqual(repr(parse("a (+) b")), "<Sum a (+) b>")
