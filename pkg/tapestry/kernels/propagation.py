# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Light-cone masking and the strength propagation rule.
"""
# stdlib
import logging
from typing import Dict, List, Optional, Sequence, Tuple

# 3p
import numpy as np

# tapestry
from tapestry.core.exceptions import NormalizationError, ParameterizationError
from tapestry.core.informon import CausalTapestry, Informon, Properties, is_submap
from tapestry.core.manifold import NULL_TOLERANCE, Lattice, ManifoldPoint
from tapestry.kernels.greens import GreensFunction

# Logging
log = logging.getLogger("tapestry.kernels")


class SourceIndex(object):
    """
    Vectorized view of a prior tapestry for repeated light-cone queries.
    """

    def __init__(self, prior, lattice):
        # type: (CausalTapestry, Lattice) -> None
        self.prior = prior
        self.lattice = lattice
        self.informons = prior.informons
        if self.informons:
            self.sites = np.array([n.site for n in self.informons], dtype=int)
        else:
            self.sites = np.zeros((0, lattice.dimension), dtype=int)
        self.strengths = np.array([n.strength for n in self.informons], dtype=complex)
        self._masks = {}  # type: Dict[Properties, np.ndarray]

    def _property_mask(self, properties):
        # type: (Properties) -> np.ndarray
        mask = self._masks.get(properties)
        if mask is None:
            mask = np.array([is_submap(n.properties, properties) for n in self.informons], dtype=bool)
            self._masks[properties] = mask
        return mask

    def within(self, target, properties=None):
        # type: (ManifoldPoint, Optional[Properties]) -> List[int]
        """
        Indices (in id order) of prior informons inside the light-cone ball of ``target``.
        """
        if self.prior.tick != target.tick - 1:
            raise ParameterizationError(
                u"Sources come from tick {0}, target sits at tick {1}".format(self.prior.tick, target.tick)
            )
        if not self.informons:
            return []
        lattice = self.lattice
        dx2 = np.sum((np.abs(self.sites - np.asarray(target.site)) * lattice.spacing) ** 2, axis=1)
        interval = (lattice.c_hat * lattice.tau) ** 2 - dx2
        slack = NULL_TOLERANCE * max(lattice.radius ** 2, lattice.spacing ** 2)
        inside = interval >= -slack
        if properties is not None:
            inside &= self._property_mask(properties)
        return [int(i) for i in np.nonzero(inside)[0]]

    def sources(self, target, properties=None):
        # type: (ManifoldPoint, Optional[Properties]) -> List[Informon]
        return [self.informons[i] for i in self.within(target, properties)]

    def propagate(self, target, indices, kernel):
        # type: (ManifoldPoint, Sequence[int], GreensFunction) -> complex
        if not len(indices):
            return 0j
        idx = np.asarray(indices, dtype=int)
        delta = (np.asarray(target.site) - self.sites[idx]) * self.lattice.spacing
        terms = kernel.value(delta) * self.strengths[idx]
        return complex(self.lattice.cell_volume * np.sum(terms))


def lightcone_sources(target, prior, lattice, properties=None):
    # type: (ManifoldPoint, CausalTapestry, Lattice, Optional[Properties]) -> List[Informon]
    """
    Prior informons whose spatial distance to ``target`` is within ``c_hat * tau``.

    With ``properties`` given, only informons whose property map is contained in it
    feed the target.
    """
    lattice.check_point(target)
    return SourceIndex(prior, lattice).sources(target, properties)


def propagate_strength(target, sources, kernel, lattice):
    # type: (ManifoldPoint, Sequence[Informon], GreensFunction, Lattice) -> complex
    """
    ``sum_k spacing^d K(target - k) strength_k``, summed in source id order.
    """
    if not sources:
        return 0j
    ordered = sorted(sources, key=lambda n: n.id)
    sites = np.array([n.site for n in ordered], dtype=int)
    strengths = np.array([n.strength for n in ordered], dtype=complex)
    delta = (np.asarray(target.site) - sites) * lattice.spacing
    return complex(lattice.cell_volume * np.sum(kernel.value(delta) * strengths))


def renormalize_tapestry(tapestry, lattice):
    # type: (CausalTapestry, Lattice) -> Tuple[CausalTapestry, float]
    """
    Scale strengths so that ``sum |strength|^2 spacing^d == 1``.

    Returns the rescaled tapestry and the norm before scaling, which measures the
    leak caused by light-cone truncation.
    """
    norm = tapestry.norm(lattice)
    if norm <= 0:
        raise NormalizationError(u"Cannot renormalize tapestry at tick {0}: all strengths vanish".format(tapestry.tick))
    return tapestry.scaled(1.0 / np.sqrt(norm)), norm
