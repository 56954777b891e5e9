# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Configuration-space interpretations of product processes.

A maximal tapestry of an n-factor product is split into per-factor pools of
informons. The admissible extension lets each pool absorb informons generated
on other paths, as long as they agree in strength with whatever the pool
already holds at the same (point, properties). Configuration interpretations
then sum strength products over the tuples of the pools, one informon per
factor.
"""
# stdlib
import itertools
import logging
from typing import Iterable, List, Optional, Sequence, Tuple, Union

# 3p
import numpy as np

# tapestry
from tapestry.algebra.expr import EXCLUSIVE
from tapestry.core.exceptions import StructureError
from tapestry.core.informon import Informon, Properties
from tapestry.core.manifold import Lattice
from tapestry.engine.engine import Play
from tapestry.engine.tree import SequenceTree
from tapestry.kernels.sinc import InterpolationKernel

# Logging
log = logging.getLogger("tapestry.interpretation")

# Strength agreement required for an admissible foreign informon
ADMISSIBLE_TOLERANCE = 1e-12

FACTORIZATION_TOLERANCE = 1e-10

Entry = Tuple[Tuple[int, ...], complex, Properties]
Term = Tuple[Entry, ...]


class ExtendedTapestry(object):
    """
    A maximal tapestry with its per-factor pools; ``absorbed`` counts the foreign
    informons each pool took in.
    """

    def __init__(self, play, pools, absorbed=None):
        # type: (Play, Sequence[Sequence[Informon]], Optional[Sequence[int]]) -> None
        self.play = play
        self.pools = [list(pool) for pool in pools]  # type: List[List[Informon]]
        self.absorbed = list(absorbed or [0] * len(self.pools))

    @classmethod
    def from_play(cls, play, factor_count):
        # type: (Play, int) -> ExtendedTapestry
        pools = [[] for _ in range(factor_count)]  # type: List[List[Informon]]
        for informon in play.tapestry:
            if informon.slot >= factor_count:
                raise StructureError(
                    u"Informon {0} belongs to factor {1}, the product has {2} factors".format(
                        informon.id, informon.slot, factor_count
                    )
                )
            pools[informon.slot].append(informon)
        return cls(play, pools)

    def admissible(self, slot, candidate):
        # type: (int, Informon) -> bool
        for informon in self.pools[slot]:
            if informon.key == candidate.key and abs(informon.strength - candidate.strength) > ADMISSIBLE_TOLERANCE:
                return False
        return True

    def holds(self, slot, candidate):
        # type: (int, Informon) -> bool
        return any(informon.key == candidate.key for informon in self.pools[slot])

    def copy(self):
        # type: () -> ExtendedTapestry
        return ExtendedTapestry(self.play, self.pools, self.absorbed)

    def __repr__(self):
        return "ExtendedTapestry(play={0}, pools={1}, absorbed={2})".format(
            self.play.index, [len(p) for p in self.pools], self.absorbed
        )


class ConfigurationTree(object):
    """
    The admissibly extended sequence tree: one extended tapestry per play.
    """

    def __init__(self, tree, tapestries, iterations=0):
        # type: (SequenceTree, Sequence[ExtendedTapestry], int) -> None
        self.tree = tree
        self.tapestries = list(tapestries)
        self.iterations = iterations

    @property
    def factor_count(self):
        # type: () -> int
        return self.tree.factor_count

    @property
    def product_mode(self):
        # type: () -> Optional[str]
        return self.tree.product_mode

    def pool_size(self):
        # type: () -> int
        return sum(len(pool) for t in self.tapestries for pool in t.pools)

    def __repr__(self):
        return "ConfigurationTree(tapestries={0}, iterations={1})".format(len(self.tapestries), self.iterations)


def _as_configuration_tree(tree):
    # type: (Union[SequenceTree, ConfigurationTree]) -> ConfigurationTree
    if isinstance(tree, ConfigurationTree):
        return ConfigurationTree(tree.tree, [t.copy() for t in tree.tapestries], tree.iterations)
    return ConfigurationTree(tree, [ExtendedTapestry.from_play(play, tree.factor_count) for play in tree.plays])


def configuration_extend(tree, candidates=None):
    # type: (Union[SequenceTree, ConfigurationTree], Optional[Iterable[Tuple[int, Informon]]]) -> ConfigurationTree
    """
    Extend every maximal tapestry with the admissible informons of the other
    paths until nothing changes.

    ``candidates`` adds ``(slot, informon)`` pairs to the foreign pool.
    """
    extended = _as_configuration_tree(tree)
    injected = list(candidates or ())
    guard = extended.pool_size() + len(injected) + 1

    iterations = 0
    changed = True
    while changed:
        # Pools only grow and each round adds at least one informon
        assert iterations <= guard, "admissible extension did not reach a fixpoint"
        changed = False
        iterations += 1
        pool = list(injected)
        for other in extended.tapestries:
            for slot, informons in enumerate(other.pools):
                pool.extend((slot, informon) for informon in informons)
        pool.sort(key=lambda item: (item[0], item[1].id, item[1].strength.real, item[1].strength.imag))

        for target in extended.tapestries:
            for slot, candidate in pool:
                if slot >= len(target.pools):
                    raise StructureError(
                        u"Candidate for factor {0} in a {1}-factor tree".format(slot, len(target.pools))
                    )
                if target.holds(slot, candidate) or not target.admissible(slot, candidate):
                    continue
                target.pools[slot].append(candidate)
                target.absorbed[slot] += 1
                changed = True

    extended.iterations = iterations
    log.debug("Admissible extension reached a fixpoint after %d passes", iterations)
    return extended


class ConfigurationInterpretation(object):
    """
    ``Phi_C(z_1, .., z_n) = sum_terms prod_j strength_j g(z_j - site_j * spacing)``
    kept as a symbolic term list.
    """

    def __init__(self, terms, spacing, dimension):
        # type: (Sequence[Sequence[Sequence[object]]], float, int) -> None
        """ Term entries are ``(site, strength)`` or ``(site, strength, properties)``. """
        self.terms = [tuple(_entry(*entry) for entry in term) for term in terms]  # type: List[Term]
        self.spacing = float(spacing)
        self.dimension = int(dimension)
        self.kernel = InterpolationKernel(spacing, dimension)

    @property
    def arity(self):
        # type: () -> int
        return len(self.terms[0]) if self.terms else 0

    def __call__(self, *points):
        # type: (*np.ndarray) -> complex
        """ Evaluate at one point per factor. """
        if self.terms and len(points) != self.arity:
            raise StructureError(u"Expected {0} arguments, got {1}".format(self.arity, len(points)))
        zs = [np.asarray(z, dtype=float).reshape(self.dimension) for z in points]
        total = 0j
        for term in self.terms:
            value = 1 + 0j
            for z, (site, strength, _) in zip(zs, term):
                value *= strength * float(self.kernel.value(z - np.asarray(site) * self.spacing))
            total += value
        return total

    def marginals(self):
        # type: () -> List[List[Entry]]
        """ Distinct (site, strength, properties) entries per slot, in first-seen order. """
        slots = [[] for _ in range(self.arity)]  # type: List[List[Entry]]
        for term in self.terms:
            for slot, entry in enumerate(term):
                if entry not in slots[slot]:
                    slots[slot].append(entry)
        return slots

    def without(self, index):
        # type: (int) -> ConfigurationInterpretation
        """ Copy with term ``index`` removed. """
        terms = self.terms[:index] + self.terms[index + 1:]
        return ConfigurationInterpretation(terms, self.spacing, self.dimension)

    def same_as(self, other, tolerance=1e-10):
        # type: (ConfigurationInterpretation, float) -> bool
        if len(self.terms) != len(other.terms):
            return False
        mine = sorted(self.terms, key=_term_sort_key)
        theirs = sorted(other.terms, key=_term_sort_key)
        for a, b in zip(mine, theirs):
            if [(site, props) for site, _, props in a] != [(site, props) for site, _, props in b]:
                return False
            if any(abs(x - y) > tolerance for (_, x, _), (_, y, _) in zip(a, b)):
                return False
        return True

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return "ConfigurationInterpretation(terms={0}, arity={1})".format(len(self.terms), self.arity)


def _entry(site, strength, properties=()):
    # type: (Sequence[int], complex, Properties) -> Entry
    return tuple(site), complex(strength), tuple(properties)


def _term_sort_key(term):
    return tuple((site, props, round(s.real, 9), round(s.imag, 9)) for site, s, props in term)


def _tuples(extended, mode):
    # type: (ExtendedTapestry, Optional[str]) -> List[Tuple[Informon, ...]]
    """ Ordered tuples, slot j bound to factor j; exclusive products drop tuples sharing an informon. """
    ordered = [sorted(pool, key=lambda n: n.id) for pool in extended.pools]
    tuples = []
    for combination in itertools.product(*ordered):
        if mode == EXCLUSIVE and len(set(n.key for n in combination)) < len(combination):
            continue
        tuples.append(combination)
    return tuples


def pcm_c(tree, n, lattice):
    # type: (Union[SequenceTree, ConfigurationTree], int, Lattice) -> List[ConfigurationInterpretation]
    """
    Configuration interpretations over the maximal tapestries of ``tree``,
    duplicates collapsed. A plain sequence tree is used without extension.
    """
    extended = tree if isinstance(tree, ConfigurationTree) else _as_configuration_tree(tree)
    if extended.factor_count != n:
        raise StructureError(u"Requested {0} factors, the tree records {1}".format(n, extended.factor_count))
    for target in extended.tapestries:
        for correlated in target.play.correlated_sets:
            if any(slot >= n for slot, _ in correlated):
                raise StructureError(u"Correlated set {0} does not fit {1} factors".format(correlated, n))

    results = []  # type: List[ConfigurationInterpretation]
    for target in extended.tapestries:
        terms = [
            tuple((informon.site, informon.strength, informon.properties) for informon in combination)
            for combination in _tuples(target, extended.product_mode)
        ]
        candidate = ConfigurationInterpretation(terms, lattice.spacing, lattice.dimension)
        if not any(candidate.same_as(known) for known in results):
            results.append(candidate)
    log.debug("PCM^C has %d elements", len(results))
    return results


class FactorizationResult(object):
    def __init__(self, factorizes, residual, probes):
        # type: (bool, float, int) -> None
        self.factorizes = factorizes
        self.residual = residual
        self.probes = probes

    def __bool__(self):
        return self.factorizes

    __nonzero__ = __bool__

    def __repr__(self):
        return "FactorizationResult(factorizes={0}, residual={1:.3g}, probes={2})".format(
            self.factorizes, self.residual, self.probes
        )


def factorization_check(ci, tolerance=FACTORIZATION_TOLERANCE):
    # type: (ConfigurationInterpretation, float) -> FactorizationResult
    """
    Compare ``ci`` with the product of its per-slot marginal sums on a probe grid:
    every marginal site and its half-spacing shift, per slot.
    """
    marginals = ci.marginals()
    if len(marginals) <= 1:
        return FactorizationResult(True, 0.0, 0)

    kernel = ci.kernel
    probes_per_slot = []  # type: List[List[np.ndarray]]
    for entries in marginals:
        probes = []  # type: List[np.ndarray]
        for site, _, _ in entries:
            base = np.asarray(site, dtype=float) * ci.spacing
            probes.append(base)
            probes.append(base + ci.spacing / 2.0)
        probes_per_slot.append(probes)

    def marginal_value(entries, z):
        return sum(s * float(kernel.value(z - np.asarray(site) * ci.spacing)) for site, s, _ in entries)

    residual = 0.0
    count = 0
    for point in itertools.product(*probes_per_slot):
        product = 1 + 0j
        for entries, z in zip(marginals, point):
            product *= marginal_value(entries, z)
        residual = max(residual, abs(ci(*point) - product))
        count += 1
    return FactorizationResult(residual < tolerance, residual, count)

