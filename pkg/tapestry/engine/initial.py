# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Initial tapestries a run can start from.
"""
# stdlib
import logging
from typing import Callable, Mapping, Optional, Sequence

# 3p
import numpy as np

# tapestry
from tapestry.core.exceptions import NormalizationError, ParameterizationError
from tapestry.core.informon import CausalTapestry, Informon
from tapestry.core.manifold import Lattice, ManifoldPoint

# Logging
log = logging.getLogger("tapestry.engine")


def delta_tapestry(lattice, site=None, strength=1.0, tick=0, properties=None):
    # type: (Lattice, Optional[Sequence[int]], complex, int, Optional[Mapping[str, object]]) -> CausalTapestry
    """ A single informon, at the origin unless ``site`` is given. """
    site = tuple(site) if site is not None else (0,) * lattice.dimension
    if not lattice.contains(site):
        raise ParameterizationError(u"Site {0} lies outside the lattice {1!r}".format(site, lattice))
    informon = Informon(ManifoldPoint(tick, site), strength, properties=properties)
    return CausalTapestry(tick, [informon], provenance="delta")


def wavefunction_tapestry(
    lattice,  # type: Lattice
    psi,  # type: Callable[[np.ndarray], np.ndarray]
    tick=0,  # type: int
    renormalize=True,  # type: bool
    properties=None,  # type: Optional[Mapping[str, object]]
    provenance="wavefunction",  # type: str
):
    # type: (...) -> CausalTapestry
    """
    One informon per site with strength ``psi(site * spacing)``.

    ``psi`` takes positions of shape ``(site_count, dimension)``.
    """
    sites = lattice.sites()
    values = np.asarray(psi(lattice.positions()), dtype=complex).reshape(-1)
    if values.size != len(sites):
        raise ParameterizationError(u"Wave function returned {0} values for {1} sites".format(values.size, len(sites)))
    if renormalize:
        norm = float(np.sum(np.abs(values) ** 2) * lattice.cell_volume)
        if norm <= 0:
            raise NormalizationError(u"Initial wave function vanishes on the lattice")
        values = values / np.sqrt(norm)
    informons = [
        Informon(ManifoldPoint(tick, site), complex(value), properties=properties) for site, value in zip(sites, values)
    ]
    log.debug("Sampled %d initial informons", len(informons))
    return CausalTapestry(tick, informons, provenance=provenance)
