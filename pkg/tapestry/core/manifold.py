# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Lattice embedding of the causal manifold.

Points are identified by integers only: a tick (one generation round) and a
d-dimensional site index. Real coordinates are derived from the lattice
parameters on demand, so identity comparisons never see floating-point drift.
"""
# stdlib
import itertools
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

# 3p
import numpy as np

# tapestry
from tapestry.core.exceptions import ParameterizationError

# Logging
log = logging.getLogger("tapestry.core")

SUPPORTED_DIMENSIONS = (1, 2, 3)

# Relative slack on the light-cone boundary, so that null edges survive rounding.
NULL_TOLERANCE = 1e-12


class ManifoldPoint(object):
    """
    A point of the lattice-embedded causal manifold.
    """

    __slots__ = ("tick", "site")

    def __init__(self, tick, site):
        # type: (int, Iterable[int]) -> None
        self.tick = int(tick)
        self.site = tuple(int(s) for s in site)

    @property
    def dimension(self):
        # type: () -> int
        return len(self.site)

    def coordinates(self, tau, spacing):
        # type: (float, float) -> Tuple[float, Tuple[float, ...]]
        """
        Real embedding ``(tick * tau, site * spacing)``.
        """
        return self.tick * tau, tuple(s * spacing for s in self.site)

    def sort_key(self):
        return (self.tick, self.site)

    def __eq__(self, other):
        if not isinstance(other, ManifoldPoint):
            return NotImplemented
        return self.tick == other.tick and self.site == other.site

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.tick, self.site))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return "ManifoldPoint(tick={0}, site={1})".format(self.tick, self.site)


def causal_distance(a, b, c_hat, tau, spacing):
    # type: (ManifoldPoint, ManifoldPoint, float, float, float) -> float
    """
    Squared interval between two points: positive is time-like, zero is null,
    negative is space-like. Symmetric in its arguments.
    """
    if a.dimension != b.dimension:
        raise ParameterizationError(
            u"Cannot compare a {0}-dimensional point with a {1}-dimensional one".format(a.dimension, b.dimension)
        )
    dt = abs(a.tick - b.tick) * tau
    dx2 = sum((abs(x - y) * spacing) ** 2 for x, y in zip(a.site, b.site))
    return (c_hat * dt) ** 2 - dx2


class Lattice(object):
    """
    Regular lattice parameterization: dimension, extent (sites per dimension),
    spacing, time step and speed parameter, in natural units.

    Sites run over ``-(extent // 2) .. extent - 1 - extent // 2`` in each
    dimension so that an odd extent is centered on the origin.
    """

    def __init__(
        self,
        dimension=1,  # type: int
        extent=None,  # type: Optional[Sequence[int]]
        spacing=1.0,  # type: float
        tau=None,  # type: Optional[float]
        c_hat=1.0,  # type: float
    ):
        # type: (...) -> None
        if dimension not in SUPPORTED_DIMENSIONS:
            raise ParameterizationError(u"Unsupported dimension {0}, expected 1, 2 or 3".format(dimension))
        if extent is None:
            extent = (1,) * dimension
        elif isinstance(extent, int):
            extent = (extent,) * dimension
        extent = tuple(int(e) for e in extent)
        if len(extent) != dimension:
            raise ParameterizationError(u"Extent {0} does not match dimension {1}".format(extent, dimension))
        if any(e <= 0 for e in extent):
            raise ParameterizationError(u"Extent must be positive in every dimension, got {0}".format(extent))
        if spacing <= 0:
            raise ParameterizationError(u"Lattice spacing must be positive, got {0}".format(spacing))
        tau = spacing if tau is None else tau
        if tau <= 0:
            raise ParameterizationError(u"Time step must be positive, got {0}".format(tau))
        if c_hat <= 0:
            raise ParameterizationError(u"Speed parameter must be positive, got {0}".format(c_hat))

        self.dimension = dimension
        self.extent = extent
        self.spacing = float(spacing)
        self.tau = float(tau)
        self.c_hat = float(c_hat)

    @property
    def radius(self):
        # type: () -> float
        """ Light-cone radius reached in one tick. """
        return self.c_hat * self.tau

    @property
    def cell_volume(self):
        # type: () -> float
        return self.spacing ** self.dimension

    def bounds(self):
        # type: () -> List[Tuple[int, int]]
        return [(-(e // 2), e - 1 - e // 2) for e in self.extent]

    def sites(self):
        # type: () -> List[Tuple[int, ...]]
        """ Every site of the domain, in lexicographic order. """
        ranges = [range(lo, hi + 1) for lo, hi in self.bounds()]
        return [tuple(s) for s in itertools.product(*ranges)]

    def positions(self):
        # type: () -> np.ndarray
        """ Real coordinates of every site, shape ``(site_count, dimension)``, in site order. """
        return np.asarray(self.sites(), dtype=float).reshape(-1, self.dimension) * self.spacing

    @property
    def site_count(self):
        # type: () -> int
        return int(np.prod(self.extent))

    def contains(self, site):
        # type: (Sequence[int]) -> bool
        if len(site) != self.dimension:
            return False
        return all(lo <= s <= hi for s, (lo, hi) in zip(site, self.bounds()))

    def check_point(self, point):
        # type: (ManifoldPoint) -> None
        if point.dimension != self.dimension:
            raise ParameterizationError(
                u"Point {0} is {1}-dimensional, lattice is {2}-dimensional".format(
                    point, point.dimension, self.dimension
                )
            )

    def coordinates(self, site):
        # type: (Sequence[int]) -> np.ndarray
        return np.asarray(site, dtype=float) * self.spacing

    def causal_distance(self, a, b):
        # type: (ManifoldPoint, ManifoldPoint) -> float
        self.check_point(a)
        self.check_point(b)
        return causal_distance(a, b, self.c_hat, self.tau, self.spacing)

    def is_causal(self, a, b):
        # type: (ManifoldPoint, ManifoldPoint) -> bool
        """
        True when ``a`` and ``b`` are time-like or null separated.
        """
        return self.causal_distance(a, b) >= -NULL_TOLERANCE * max(self.radius ** 2, self.spacing ** 2)

    def replace(self, **kwargs):
        params = {
            "dimension": self.dimension,
            "extent": self.extent,
            "spacing": self.spacing,
            "tau": self.tau,
            "c_hat": self.c_hat,
        }
        params.update(kwargs)
        return Lattice(**params)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return (self.dimension, self.extent, self.spacing, self.tau, self.c_hat) == (
            other.dimension,
            other.extent,
            other.spacing,
            other.tau,
            other.c_hat,
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "Lattice(dimension={0}, extent={1}, spacing={2}, tau={3}, c_hat={4})".format(
            self.dimension, self.extent, self.spacing, self.tau, self.c_hat
        )
