# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Detection statistics computed from informon strengths alone.
"""
# stdlib
import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, TextIO, Tuple

# 3p
import numpy as np

# tapestry
from tapestry.core.exceptions import NormalizationError, ParameterizationError
from tapestry.core.informon import CausalTapestry
from tapestry.core.manifold import Lattice
from tapestry.interpretation.global_interp import interpret

# Logging
log = logging.getLogger("tapestry.measurement")

# Midpoint-rule nodes per dimension inside one lattice cell
QUADRATURE_NODES = 8

Site = Tuple[int, ...]


class Region(object):
    """
    A named set of lattice sites.
    """

    def __init__(self, sites, name=None):
        # type: (Iterable[Sequence[int]], Optional[str]) -> None
        self.sites = frozenset(tuple(int(s) for s in site) for site in sites)  # type: FrozenSet[Site]
        self.name = name

    @classmethod
    def box(cls, lattice, lower, upper, name=None):
        # type: (Lattice, Sequence[int], Sequence[int], Optional[str]) -> Region
        """ Every lattice site with ``lower <= site <= upper`` componentwise. """
        if len(lower) != lattice.dimension or len(upper) != lattice.dimension:
            raise ParameterizationError(u"Box corners must have {0} coordinates".format(lattice.dimension))
        return cls(
            [s for s in lattice.sites() if all(lo <= c <= hi for c, lo, hi in zip(s, lower, upper))], name=name
        )

    @classmethod
    def domain(cls, lattice, name="domain"):
        # type: (Lattice, str) -> Region
        return cls(lattice.sites(), name=name)

    def check(self, lattice):
        # type: (Lattice) -> None
        outside = [s for s in self.sites if not lattice.contains(s)]
        if outside:
            raise ParameterizationError(
                u"Region {0!r} has sites outside the lattice: {1}".format(self.name, sorted(outside)[:3])
            )

    def __contains__(self, site):
        return tuple(site) in self.sites

    def __len__(self):
        return len(self.sites)

    def __repr__(self):
        return "Region(name={0!r}, sites={1})".format(self.name, len(self.sites))


def _total_weight(tapestry):
    # type: (CausalTapestry) -> float
    total = float(sum(abs(n.strength) ** 2 for n in tapestry))
    if total <= 0:
        raise NormalizationError(
            u"Detection probability is undefined: every strength of tick {0} vanishes".format(tapestry.tick)
        )
    return total


def site_weights(tapestry):
    # type: (CausalTapestry) -> Dict[Site, float]
    """ ``sum |strength|^2`` per site over the informons there, whatever their properties. """
    weights = {}  # type: Dict[Site, float]
    for n in tapestry:
        weights[n.site] = weights.get(n.site, 0.0) + abs(n.strength) ** 2
    return weights


def detection_probability(tapestry, region):
    # type: (CausalTapestry, Region) -> float
    """
    ``sum_{n in region} |strength_n|^2 / sum_n |strength_n|^2``.
    """
    total = _total_weight(tapestry)
    inside = sum(weight for site, weight in site_weights(tapestry).items() if site in region.sites)
    return float(inside / total)


def cell_quadrature(interpretation, site, nodes=QUADRATURE_NODES):
    # type: (object, Sequence[int], int) -> float
    """
    Integral of ``|Phi|^2`` over the lattice cell centered on ``site`` (midpoint rule).
    """
    spacing = interpretation.spacing
    dimension = interpretation.dimension
    offsets = (np.arange(nodes) + 0.5) / nodes - 0.5
    grid = np.array(list(itertools.product(offsets, repeat=dimension))) * spacing
    points = np.asarray(site, dtype=float) * spacing + grid
    values = interpretation(points)
    return float(np.mean(np.abs(values) ** 2) * spacing ** dimension)


def interpreted_probability(tapestry, lattice, region, nodes=QUADRATURE_NODES):
    # type: (CausalTapestry, Lattice, Region, int) -> float
    """
    Probability of ``region`` from the cell quadrature of ``|Phi|^2``, normalized
    over the cells of every informon site.
    """
    interpretation = interpret(tapestry, lattice)
    sites = sorted(set(n.site for n in tapestry))
    weights = dict((site, cell_quadrature(interpretation, site, nodes)) for site in sites)
    total = sum(weights.values())
    if total <= 0:
        raise NormalizationError(u"Interpreted density vanishes on every cell")
    return float(sum(w for site, w in weights.items() if site in region.sites) / total)


class DeviationReport(object):
    def __init__(self, per_site, max_relative, max_absolute):
        # type: (Dict[Site, Tuple[float, float]], float, float) -> None
        self.per_site = per_site
        self.max_relative = max_relative
        self.max_absolute = max_absolute

    def __repr__(self):
        return "DeviationReport(sites={0}, max_relative={1:.3g}, max_absolute={2:.3g})".format(
            len(self.per_site), self.max_relative, self.max_absolute
        )


def empirical_vs_interpretation(tapestry, lattice, nodes=QUADRATURE_NODES):
    # type: (CausalTapestry, Lattice, int) -> DeviationReport
    """
    Compare the per-site weight of :func:`site_weights`, times ``spacing^d``, with the
    cell quadrature of ``|Phi|^2``; relative deviations are taken against the largest site weight.
    """
    _total_weight(tapestry)
    weights = site_weights(tapestry)
    interpretation = interpret(tapestry, lattice)
    per_site = {}  # type: Dict[Site, Tuple[float, float]]
    for site, weight in sorted(weights.items()):
        per_site[site] = (weight * lattice.cell_volume, cell_quadrature(interpretation, site, nodes))
    scale = max(empirical for empirical, _ in per_site.values())
    max_absolute = max(abs(e - q) for e, q in per_site.values())
    return DeviationReport(per_site, max_absolute / scale, max_absolute)


def region_probabilities(tapestry, regions):
    # type: (CausalTapestry, Sequence[Region]) -> List[Tuple[str, float]]
    return [
        (region.name or "region{0}".format(i), detection_probability(tapestry, region))
        for i, region in enumerate(regions)
    ]


def write_probabilities(rows, fp, header=None):
    # type: (Iterable[Tuple[str, float]], TextIO, Optional[Iterable[str]]) -> None
    """ Tab-delimited (region, probability) rows. """
    for line in header or ():
        fp.write("# {0}\n".format(line))
    fp.write("# region\tprobability\n")
    for name, probability in rows:
        fp.write("{0}\t{1!r}\n".format(name, probability))


def partition(lattice, cells):
    # type: (Lattice, int) -> List[Region]
    """
    Split a 1-D lattice into ``cells`` contiguous regions of (nearly) equal size.
    """
    if lattice.dimension != 1:
        raise ParameterizationError(u"Contiguous partitions are defined for 1-D lattices")
    sites = lattice.sites()
    chunks = np.array_split(np.arange(len(sites)), cells)
    return [Region([sites[i] for i in chunk], name="cell{0}".format(k)) for k, chunk in enumerate(chunks)]


def regions_from_mapping(lattice, boxes):
    # type: (Lattice, Mapping[str, Tuple[Sequence[int], Sequence[int]]]) -> List[Region]
    return [Region.box(lattice, lower, upper, name=name) for name, (lower, upper) in boxes.items()]
