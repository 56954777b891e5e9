# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Process covering maps: the set of global interpretations a process can produce
from a given tapestry, one per maximal tapestry of its sequence tree.
"""
# stdlib
import logging
from typing import Dict, List, Optional, Sequence, Tuple

# tapestry
from tapestry.algebra.expr import EXCLUSIVE, ProcessExpr, Sum
from tapestry.core.exceptions import IntegrityError
from tapestry.core.informon import CausalTapestry
from tapestry.core.manifold import Lattice
from tapestry.engine.config import GenerationConfig
from tapestry.engine.tree import SequenceTree, enumerate_plays
from tapestry.interpretation.global_interp import GlobalInterpretation, interpret

# Logging
log = logging.getLogger("tapestry.interpretation")

# Strength tolerance of set equality between interpretations
SET_TOLERANCE = 1e-10


class PcmResult(object):
    """
    A set of global interpretations; elements closer than ``tolerance`` collapse.
    """

    def __init__(self, interpretations=(), provenance=None, tolerance=SET_TOLERANCE):
        # type: (Sequence[GlobalInterpretation], Optional[str], float) -> None
        self.provenance = provenance
        self.tolerance = tolerance
        self.interpretations = []  # type: List[GlobalInterpretation]
        for candidate in interpretations:
            self.add(candidate)

    def add(self, interpretation):
        # type: (GlobalInterpretation) -> bool
        if self.contains(interpretation):
            return False
        self.interpretations.append(interpretation)
        return True

    def contains(self, interpretation):
        # type: (GlobalInterpretation) -> bool
        return any(known.distance(interpretation) <= self.tolerance for known in self.interpretations)

    def missing_from(self, other):
        # type: (PcmResult) -> List[GlobalInterpretation]
        """ Elements of ``self`` that ``other`` does not contain. """
        return [i for i in self.interpretations if not other.contains(i)]

    def issubset(self, other):
        # type: (PcmResult) -> bool
        return not self.missing_from(other)

    def equals(self, other):
        # type: (PcmResult) -> bool
        return self.issubset(other) and other.issubset(self)

    def __iter__(self):
        return iter(self.interpretations)

    def __len__(self):
        return len(self.interpretations)

    def strength_vectors(self):
        # type: () -> List[List[Tuple[Tuple[int, ...], complex]]]
        """ One sorted (site, strength) record per element, for export. """
        return [sorted(i.site_strengths().items()) for i in self.interpretations]

    def __repr__(self):
        return "PcmResult(elements={0}, provenance={1!r})".format(len(self), self.provenance)


def pcm(tree, lattice):
    # type: (SequenceTree, Lattice) -> PcmResult
    """
    One interpretation per maximal tapestry of ``tree``, duplicates collapsed.
    """
    result = PcmResult(provenance=tree.provenance)
    for tapestry in tree.maximal_tapestries():
        result.add(interpret(tapestry, lattice))
    log.debug("PCM over %d plays has %d elements", len(tree.plays), len(result))
    return result


def minkowski_sum(first, second):
    # type: (PcmResult, PcmResult) -> PcmResult
    """ ``{f + g | f in first, g in second}``. """
    result = PcmResult(provenance="minkowski", tolerance=min(first.tolerance, second.tolerance))
    for f in first:
        for g in second:
            result.add(f + g)
    return result


class LinearityReport(object):
    def __init__(self, mode, lhs, rhs):
        # type: (str, PcmResult, PcmResult) -> None
        self.mode = mode
        self.lhs = lhs
        self.rhs = rhs
        self.extra = lhs.missing_from(rhs)
        self.missing = rhs.missing_from(lhs)

    @property
    def equal(self):
        # type: () -> bool
        return not self.extra and not self.missing

    @property
    def included(self):
        # type: () -> bool
        """ Every interpretation of the sum is a Minkowski sum element. """
        return not self.extra

    def __repr__(self):
        return "LinearityReport(mode={0!r}, sum={1}, minkowski={2}, extra={3}, missing={4})".format(
            self.mode, len(self.lhs), len(self.rhs), len(self.extra), len(self.missing)
        )


def pcm_sum_linearity_check(summands, initial, cfg, mode=EXCLUSIVE):
    # type: (Sequence[Tuple[complex, ProcessExpr]], CausalTapestry, GenerationConfig, str) -> LinearityReport
    """
    Compare the PCM of a weighted sum with the Minkowski sum of the weighted
    summand PCMs, by full enumeration without renormalization.

    An exclusive sum of summands with identical properties can only realize
    the elements whose summands picked distinct sites, so only inclusion holds
    for it.
    """
    cfg = cfg.replace(renormalize=False)
    lattice = cfg.lattice
    lhs = pcm(enumerate_plays(Sum(mode, summands), initial, cfg), lattice)

    rhs = None  # type: Optional[PcmResult]
    for weight, expr in summands:
        weighted = pcm(enumerate_plays(Sum(EXCLUSIVE, [(weight, expr)]), initial, cfg), lattice)
        rhs = weighted if rhs is None else minkowski_sum(rhs, weighted)
    report = LinearityReport(mode, lhs, rhs or PcmResult([interpret(CausalTapestry(initial.tick + 1), lattice)]))
    log.info("Linearity check (%s): %r", mode, report)
    return report


def coproduct_decompose(tapestry, lattice, factor_count=None):
    # type: (CausalTapestry, Lattice, Optional[int]) -> List[GlobalInterpretation]
    """
    One component interpretation per product factor, from the informons that
    factor generated. The components are kept as an ordered tuple, never summed.
    """
    by_slot = {}  # type: Dict[int, List]
    for informon in tapestry:
        if not informon.generator:
            raise IntegrityError(u"Informon {0} has no generator attribution".format(informon.id))
        by_slot.setdefault(informon.slot, []).append(informon)
    if factor_count is None:
        factor_count = max(by_slot) + 1 if by_slot else 1
    components = []
    for slot in range(factor_count):
        informons = by_slot.get(slot, [])
        components.append(interpret(CausalTapestry(tapestry.tick, informons), lattice))
    return components


def pcm_coproduct(tree, lattice):
    # type: (SequenceTree, Lattice) -> List[Tuple[GlobalInterpretation, ...]]
    """
    Co-product elements of a product process: the ordered component tuple of
    every distinct maximal tapestry.
    """
    return [
        tuple(coproduct_decompose(tapestry, lattice, tree.factor_count)) for tapestry in tree.distinct_tapestries()
    ]


def coproduct_sum(components):
    # type: (Sequence[GlobalInterpretation]) -> GlobalInterpretation
    """
    Pointwise sum of co-product components, meaningful when the factors are
    different states of one process.
    """
    if not components:
        raise ValueError("coproduct_sum needs at least one component")
    total = components[0]
    for component in components[1:]:
        total = total + component
    return total
