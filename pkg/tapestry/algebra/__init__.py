# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Process algebra: expressions, normal forms, the field subalgebra and the text syntax.
"""
from tapestry.algebra.expr import (  # noqa
    BOSONIC,
    EXCLUSIVE,
    FERMIONIC,
    FREE,
    ZERO,
    Concat,
    Primitive,
    ProcessExpr,
    Product,
    Sum,
    Zero,
    fock_level,
    fock_space,
    grade,
    is_graded,
    regime_of,
    scale,
    simplify,
)
from tapestry.algebra.parser import parse, render  # noqa
