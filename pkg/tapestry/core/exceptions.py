# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Tapestry exceptions.

Every exception carries a machine-readable ``category`` and the exit status the
command-line driver reports for it.
"""


class TapestryException(Exception):
    """
    Base class for tapestry exceptions.  Use this for patterns like the following:

        try:
            # run a process against a tapestry
        except tapestry.core.exceptions.TapestryException:
            # handle any tapestry-specific exception
    """

    category = "internal"
    exit_code = 1


class ParameterizationError(TapestryException):
    """
    Lattice parameters are inconsistent (dimension mismatch, non-positive time step...).
    """

    category = "parameterization"
    exit_code = 2


class ConstructionError(TapestryException):
    """
    A causal tapestry violates a construction invariant.
    """

    category = "construction"
    exit_code = 3


class IntegrityError(TapestryException):
    """
    A causal reference or a generator attribution cannot be resolved.
    """

    category = "integrity"
    exit_code = 4


class NormalizationError(TapestryException):
    """
    Strengths sum to zero where a normalization or a probability is required.
    """

    category = "normalization"
    exit_code = 5


class GradingError(TapestryException):
    """
    A process expression has no single grade.
    """

    category = "grading"
    exit_code = 6


class CapacityError(TapestryException):
    """
    The domain has no admissible site left for an emission.
    """

    category = "capacity"
    exit_code = 7

    def __init__(self, generator, tick):
        message = (
            u"{generator} has no admissible site left at tick {tick}. "
            u"Enlarge the lattice or lower the number of informons per round.".format(generator=generator, tick=tick)
        )
        super(CapacityError, self).__init__(message)


class EnumerationError(TapestryException):
    """
    The play space exceeds the enumeration budget.
    """

    category = "enumeration"
    exit_code = 8

    def __init__(self, budget):
        message = u"Enumeration refused: more than {budget} plays (raise `budget` to allow it).".format(budget=budget)
        super(EnumerationError, self).__init__(message)
        self.budget = budget


class StructureError(TapestryException):
    """
    Recorded correlated sets do not match the requested structure.
    """

    category = "structure"
    exit_code = 9


class ConfigError(TapestryException):
    """
    A run configuration is invalid. ``lineno`` anchors the message to the input when known.
    """

    category = "config"
    exit_code = 10

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = u"line {lineno}: {message}".format(lineno=lineno, message=message)
        super(ConfigError, self).__init__(message)
        self.lineno = lineno


class MissingFieldError(ConfigError):
    category = "config.missing-field"


class UnknownPrimitiveError(ConfigError):
    category = "config.unknown-primitive"


class DuplicatePrimitiveError(ConfigError):
    category = "config.duplicate-primitive"


class ExpressionSyntaxError(ConfigError):
    category = "config.expression-syntax"


class GridMismatchError(TapestryException):
    """
    Two sample grids have different shapes.
    """

    category = "grid"
    exit_code = 11


class PaddingError(TapestryException):
    """
    The domain is too small for the requested convergence study.
    """

    category = "padding"
    exit_code = 12
