# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Textual process expressions.

Grammar, loosest binding first::

    concat  := sum (";" sum)*
    sum     := product (("(+)" | "(+^)") product)*
    product := term (("(x)" | "(x^)") term)*
    term    := [weight "*"] atom
    weight  := number | "[" complex "]"
    atom    := "0" | name | "(" concat ")"

Mixing the exclusive and free operator of one kind at the same level needs
parentheses.
"""
# stdlib
import re
from typing import Dict, List, Mapping, Optional, Tuple

# tapestry
from tapestry.algebra.expr import (
    EXCLUSIVE,
    FREE,
    ZERO,
    Concat,
    Primitive,
    ProcessExpr,
    Product,
    Sum,
    Zero,
)
from tapestry.core.exceptions import ExpressionSyntaxError, UnknownPrimitiveError

SUM_OPERATORS = {"(+)": EXCLUSIVE, "(+^)": FREE}
PRODUCT_OPERATORS = {"(x)": EXCLUSIVE, "(x^)": FREE}
_SUM_SYMBOL = dict((mode, op) for op, mode in SUM_OPERATORS.items())
_PRODUCT_SYMBOL = dict((mode, op) for op, mode in PRODUCT_OPERATORS.items())

_TOKEN_RE = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<op>\(\+\^\)|\(\+\)|\(x\^\)|\(x\))
  | (?P<complex>\[[^\]]*\])
  | (?P<number>-?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[();*])
    """,
    re.VERBOSE,
)


class Token(object):
    def __init__(self, kind, text, column):
        # type: (str, str, int) -> None
        self.kind = kind
        self.text = text
        self.column = column

    def __repr__(self):
        return "Token({0!r}, {1!r}, {2})".format(self.kind, self.text, self.column)


def tokenize(text, lineno=None):
    # type: (str, Optional[int]) -> List[Token]
    tokens = []  # type: List[Token]
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise ExpressionSyntaxError(
                u"unexpected character {0!r} at column {1}".format(text[position], position + 1), lineno=lineno
            )
        kind = match.lastgroup
        if kind != "space":
            tokens.append(Token(kind, match.group(kind), position + 1))
        position = match.end()
    return tokens


class Parser(object):
    """
    Recursive-descent parser over :func:`tokenize` output.
    """

    def __init__(self, text, primitives=None, lineno=None):
        # type: (str, Optional[Mapping[str, Primitive]], Optional[int]) -> None
        self.text = text
        self.primitives = primitives
        self.lineno = lineno
        self.tokens = tokenize(text, lineno)
        self.position = 0
        self._implicit = {}  # type: Dict[str, Primitive]

    def error(self, message, token=None):
        # type: (str, Optional[Token]) -> ExpressionSyntaxError
        if token is None:
            where = "end of expression"
        else:
            where = "column {0}".format(token.column)
        return ExpressionSyntaxError(u"{0} at {1} in {2!r}".format(message, where, self.text), lineno=self.lineno)

    def peek(self):
        # type: () -> Optional[Token]
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return None

    def next(self):
        # type: () -> Optional[Token]
        token = self.peek()
        if token is not None:
            self.position += 1
        return token

    def expect(self, text):
        # type: (str) -> Token
        token = self.next()
        if token is None or token.text != text:
            raise self.error(u"expected {0!r}".format(text), token)
        return token

    def parse(self):
        # type: () -> ProcessExpr
        if not self.tokens:
            raise self.error(u"empty expression")
        expr = self.concat()
        token = self.peek()
        if token is not None:
            raise self.error(u"unexpected {0!r}".format(token.text), token)
        return expr

    def concat(self):
        # type: () -> ProcessExpr
        parts = [self.sum()]
        while self.peek() is not None and self.peek().text == ";":
            self.next()
            parts.append(self.sum())
        if len(parts) == 1:
            return parts[0]
        return Concat(parts)

    def sum(self):
        # type: () -> ProcessExpr
        terms = [self.term()]
        mode = None
        while self.peek() is not None and self.peek().text in SUM_OPERATORS:
            token = self.next()
            op_mode = SUM_OPERATORS[token.text]
            if mode is not None and op_mode != mode:
                raise self.error(u"mixed (+) and (+^) need parentheses", token)
            mode = op_mode
            terms.append(self.term())
        if mode is None:
            weight, expr = terms[0]
            if weight is None:
                return expr
            return Sum(EXCLUSIVE, [(weight, expr)])
        return Sum(mode, [(1 if w is None else w, e) for w, e in terms])

    def term(self):
        # type: () -> Tuple[Optional[complex], ProcessExpr]
        """ A product, possibly a single weighted atom. """
        factors = [self.weighted_atom()]
        mode = None
        while self.peek() is not None and self.peek().text in PRODUCT_OPERATORS:
            token = self.next()
            op_mode = PRODUCT_OPERATORS[token.text]
            if mode is not None and op_mode != mode:
                raise self.error(u"mixed (x) and (x^) need parentheses", token)
            mode = op_mode
            factors.append(self.weighted_atom())
        if mode is None:
            return factors[0]
        return None, Product(mode, [_as_factor(w, e) for w, e in factors])

    def weighted_atom(self):
        # type: () -> Tuple[Optional[complex], ProcessExpr]
        token = self.peek()
        if token is not None and token.kind in ("number", "complex"):
            following = self.tokens[self.position + 1] if self.position + 1 < len(self.tokens) else None
            if token.kind == "complex" or (following is not None and following.text == "*"):
                self.next()
                weight = self.weight(token)
                self.expect("*")
                return weight, self.atom()
        return None, self.atom()

    def weight(self, token):
        # type: (Token) -> complex
        text = token.text
        if token.kind == "complex":
            text = text[1:-1].strip()
        try:
            return complex(text.replace(" ", ""))
        except ValueError:
            raise self.error(u"invalid weight {0!r}".format(token.text), token)

    def atom(self):
        # type: () -> ProcessExpr
        token = self.next()
        if token is None:
            raise self.error(u"expected a process")
        if token.text == "(":
            expr = self.concat()
            self.expect(")")
            return expr
        if token.kind == "number":
            if token.text == "0":
                return ZERO
            raise self.error(u"a bare number is not a process (weights need '*')", token)
        if token.kind == "name":
            return self.primitive(token)
        raise self.error(u"unexpected {0!r}".format(token.text), token)

    def primitive(self, token):
        # type: (Token) -> Primitive
        name = token.text
        if name == "x":
            raise self.error(u"'x' is reserved for the product operators", token)
        if self.primitives is None:
            return self._implicit.setdefault(name, Primitive(name))
        try:
            return self.primitives[name]
        except KeyError:
            raise UnknownPrimitiveError(
                u"primitive {0!r} is not declared (declared: {1})".format(name, ", ".join(sorted(self.primitives))),
                lineno=self.lineno,
            )


def _as_factor(weight, expr):
    # type: (Optional[complex], ProcessExpr) -> ProcessExpr
    if weight is None:
        return expr
    return Sum(EXCLUSIVE, [(weight, expr)])


def parse(text, primitives=None, lineno=None):
    # type: (str, Optional[Mapping[str, Primitive]], Optional[int]) -> ProcessExpr
    """
    Parse ``text`` into a process expression.

    With ``primitives`` given, every name must be declared there; otherwise each
    name becomes a bare :class:`Primitive`.
    """
    return Parser(text, primitives, lineno).parse()


def render_weight(weight):
    # type: (complex) -> str
    weight = complex(weight)
    if weight.imag == 0:
        return repr(weight.real)
    return "[{0!r}]".format(weight)


def render(expr):
    # type: (ProcessExpr) -> str
    """
    Text form of ``expr``; ``parse(render(e))`` rebuilds ``e`` for normal forms.
    """
    if isinstance(expr, Zero):
        return "0"
    if isinstance(expr, Primitive):
        return expr.name
    if isinstance(expr, Sum):
        if len(expr.terms) == 1:
            weight, child = expr.terms[0]
            return "{0}*{1}".format(render_weight(weight), _render_atom(child))
        rendered = []
        for weight, child in expr.terms:
            if isinstance(child, (Sum, Concat)):
                text = "({0})".format(render(child))
            else:
                text = render(child)
            if weight != 1:
                text = "{0}*{1}".format(render_weight(weight), _render_atom(child))
            rendered.append(text)
        return " {0} ".format(_SUM_SYMBOL[expr.mode]).join(rendered)
    if isinstance(expr, Product):
        rendered = []
        for factor in expr.factors:
            if isinstance(factor, Sum) and len(factor.terms) == 1:
                rendered.append(render(factor))
            elif isinstance(factor, (Sum, Product, Concat)):
                rendered.append("({0})".format(render(factor)))
            else:
                rendered.append(render(factor))
        return " {0} ".format(_PRODUCT_SYMBOL[expr.mode]).join(rendered)
    if isinstance(expr, Concat):
        return " ; ".join(
            "({0})".format(render(p)) if isinstance(p, Concat) else render(p) for p in expr.parts
        )
    raise TypeError("Not a process expression: {0!r}".format(expr))


def _render_atom(expr):
    # type: (ProcessExpr) -> str
    if isinstance(expr, (Zero, Primitive)):
        return render(expr)
    return "({0})".format(render(expr))
