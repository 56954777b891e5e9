# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Process expressions.

An expression is an immutable tree over primitive processes: the zero process,
weighted sums (exclusive or free), products (exclusive or free) and
concatenations. Sums and products are Abelian and get a canonical operand order
from :func:`simplify`; concatenation keeps its order.
"""
# stdlib
import logging
from typing import Any, List, Mapping, Optional, Sequence, Tuple

# tapestry
from tapestry.core.exceptions import GradingError
from tapestry.core.informon import Properties, freeze_properties
from tapestry.kernels.greens import FREE as FREE_KERNEL

# Logging
log = logging.getLogger("tapestry.algebra")

EXCLUSIVE = "exclusive"
FREE = "free"
MODES = (EXCLUSIVE, FREE)

BOSONIC = "bosonic"
FERMIONIC = "fermionic"

PARTICLE_LIKE = "particle-like"
FIELD_LIKE = "field-like"


class ProcessExpr(object):
    """
    Base class of process expressions.
    """

    def key(self):
        # type: () -> Tuple[Any, ...]
        """ Canonical structural key, used for sorting Abelian operands and for equality. """
        raise NotImplementedError()

    def children(self):
        # type: () -> Sequence[ProcessExpr]
        return ()

    def __eq__(self, other):
        if not isinstance(other, ProcessExpr):
            return NotImplemented
        return self.key() == other.key()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        # pylint: disable=import-outside-toplevel
        from tapestry.algebra.parser import render

        return "<{0} {1}>".format(self.__class__.__name__, render(self))


class Zero(ProcessExpr):
    """ The process that does nothing. """

    def key(self):
        return ("0",)


ZERO = Zero()


class Primitive(ProcessExpr):
    """
    A primitive process: emits one informon per subround (R = 1) and ``n``
    informons per round (``None`` defers to the run configuration).
    """

    def __init__(self, name, properties=None, n=None, kernel=FREE_KERNEL, table=None):
        # type: (str, Optional[Mapping[str, object]], Optional[int], str, Optional[dict]) -> None
        self.name = name
        self.properties = freeze_properties(properties)  # type: Properties
        self.n = n
        self.kernel = kernel
        self.table = table

    def key(self):
        return ("P", self.name, self.properties, -1 if self.n is None else self.n, self.kernel)


class Sum(ProcessExpr):
    """
    ``(+)`` (exclusive) or ``(+^)`` (free) sum of weighted terms.

    Weights act on generated strengths, not on the choice of the acting summand.
    """

    def __init__(self, mode, terms):
        # type: (str, Sequence[Tuple[complex, ProcessExpr]]) -> None
        if mode not in MODES:
            raise ValueError("Unknown sum mode {0!r}".format(mode))
        self.mode = mode
        self.terms = tuple((complex(w), e) for w, e in terms)  # type: Tuple[Tuple[complex, ProcessExpr], ...]

    def children(self):
        return tuple(e for _, e in self.terms)

    def key(self):
        return ("S", self.mode, tuple((e.key(), w.real, w.imag) for w, e in self.terms))


class Product(ProcessExpr):
    """
    ``(x)`` (exclusive) or ``(x^)`` (free) product: every factor emits in every step.
    """

    def __init__(self, mode, factors):
        # type: (str, Sequence[ProcessExpr]) -> None
        if mode not in MODES:
            raise ValueError("Unknown product mode {0!r}".format(mode))
        self.mode = mode
        self.factors = tuple(factors)  # type: Tuple[ProcessExpr, ...]

    def children(self):
        return self.factors

    def key(self):
        return ("X", self.mode, tuple(f.key() for f in self.factors))


class Concat(ProcessExpr):
    """
    Ordered composition. Represented and normalized, never generated.
    """

    def __init__(self, parts):
        # type: (Sequence[ProcessExpr]) -> None
        self.parts = tuple(parts)  # type: Tuple[ProcessExpr, ...]

    def children(self):
        return self.parts

    def key(self):
        return ("C", tuple(p.key() for p in self.parts))


def _sort_key(item):
    w, e = item
    return (e.key(), w.real, w.imag)


def simplify(expr):
    # type: (ProcessExpr) -> ProcessExpr
    """
    Normal form: zero summands dropped, same-mode sums and products flattened,
    single-term weights merged, Abelian operands sorted. Idempotent.

    Products containing the zero process are left as they are.
    """
    if isinstance(expr, (Zero, Primitive)):
        return expr

    if isinstance(expr, Sum):
        terms = []  # type: List[Tuple[complex, ProcessExpr]]
        for w, child in expr.terms:
            child = simplify(child)
            if isinstance(child, Zero):
                continue
            if isinstance(child, Sum) and (child.mode == expr.mode or len(child.terms) == 1):
                terms.extend((w * cw, ce) for cw, ce in child.terms)
            else:
                terms.append((w, child))
        if not terms:
            return ZERO
        if len(terms) == 1:
            w, child = terms[0]
            if w == 1:
                return child
            if isinstance(child, Sum):
                return Sum(child.mode, sorted(((w * cw, ce) for cw, ce in child.terms), key=_sort_key))
            return Sum(EXCLUSIVE, terms)
        return Sum(expr.mode, sorted(terms, key=_sort_key))

    if isinstance(expr, Product):
        factors = []  # type: List[ProcessExpr]
        for child in expr.factors:
            child = simplify(child)
            if isinstance(child, Product) and child.mode == expr.mode:
                factors.extend(child.factors)
            else:
                factors.append(child)
        if len(factors) == 1:
            return factors[0]
        return Product(expr.mode, sorted(factors, key=lambda f: f.key()))

    if isinstance(expr, Concat):
        parts = []  # type: List[ProcessExpr]
        for child in expr.parts:
            child = simplify(child)
            if isinstance(child, Concat):
                parts.extend(child.parts)
            else:
                parts.append(child)
        if len(parts) == 1:
            return parts[0]
        return Concat(parts)

    raise TypeError("Not a process expression: {0!r}".format(expr))


def scale(weight, expr):
    # type: (complex, ProcessExpr) -> ProcessExpr
    """
    ``w P``: every strength generated by ``P`` is multiplied by ``w``.
    """
    return simplify(Sum(EXCLUSIVE, [(weight, expr)]))


def exclusive_sum(*terms):
    # type: (*Any) -> ProcessExpr
    return Sum(EXCLUSIVE, [t if isinstance(t, tuple) else (1, t) for t in terms])


def free_sum(*terms):
    # type: (*Any) -> ProcessExpr
    return Sum(FREE, [t if isinstance(t, tuple) else (1, t) for t in terms])


def exclusive_product(*factors):
    # type: (*ProcessExpr) -> ProcessExpr
    return Product(EXCLUSIVE, factors)


def free_product(*factors):
    # type: (*ProcessExpr) -> ProcessExpr
    return Product(FREE, factors)


def fock_level(states, k, statistics=BOSONIC):
    # type: (Sequence[ProcessExpr], int, str) -> ProcessExpr
    """
    ``k``-particle sector of the field subalgebra over ``states``: the k-fold free
    (bosonic) or exclusive (fermionic) product of the exclusive sum of states.

    ``k == 0`` gives the zero process.
    """
    if not states:
        raise ValueError("fock_level needs at least one state")
    if statistics not in (BOSONIC, FERMIONIC):
        raise ValueError("Unknown statistics {0!r}".format(statistics))
    if k == 0:
        return ZERO
    if k < 0:
        raise ValueError("Level must be non-negative, got {0}".format(k))
    level_one = simplify(Sum(EXCLUSIVE, [(1, s) for s in states]))
    if k == 1:
        return level_one
    mode = FREE if statistics == BOSONIC else EXCLUSIVE
    return Product(mode, [level_one] * k)


def fock_space(states, max_level, statistics=BOSONIC):
    # type: (Sequence[ProcessExpr], int, str) -> ProcessExpr
    """
    ``Sigma (+) (Sigma x Sigma) (+) ...`` truncated at ``max_level`` factors.
    """
    return Sum(EXCLUSIVE, [(1, fock_level(states, k, statistics)) for k in range(1, max_level + 1)])


def grade(expr):
    # type: (ProcessExpr) -> int
    """
    Number of concurrent factors, i.e. informon sets generated per round.
    """
    if isinstance(expr, Zero):
        return 0
    if isinstance(expr, Primitive):
        return 1
    if isinstance(expr, Product):
        return sum(grade(f) for f in expr.factors)
    if isinstance(expr, Sum):
        grades = set(grade(e) for _, e in expr.terms if not isinstance(e, Zero))
        if len(grades) > 1:
            raise GradingError(u"Sum mixes grades {0}".format(sorted(grades)))
        return grades.pop() if grades else 0
    raise GradingError(u"Concatenation has no grade")


def is_graded(expr):
    # type: (ProcessExpr) -> bool
    try:
        grade(expr)
    except GradingError:
        return False
    return True


def primitives(expr):
    # type: (ProcessExpr) -> List[Primitive]
    """ Primitives in depth-first order, repeated as often as they occur. """
    if isinstance(expr, Primitive):
        return [expr]
    found = []  # type: List[Primitive]
    for child in expr.children():
        found.extend(primitives(child))
    return found


def regime_of(expr, n, site_count):
    # type: (ProcessExpr, int, int) -> str
    """
    Particle-like when the informons generated per round cover at most half of
    the domain, field-like otherwise.
    """
    per_round = grade(expr) * n
    return PARTICLE_LIKE if per_round <= 0.5 * site_count else FIELD_LIKE
