# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Closed-form free Gaussian wave packets (hbar = m = 1) and a spectral integrator
used to cross-check them.

``psi(x, 0) = (2 pi sigma^2)^(-1/4) exp(-(x - x0)^2 / (4 sigma^2) + i k0 (x - x0))``
per dimension; the density width grows as ``sigma^2 + t^2 / (4 sigma^2)`` and the
center moves at ``k0``.
"""
# stdlib
from typing import Mapping, Optional, Sequence, Union

# 3p
import numpy as np

# tapestry
from tapestry.core.exceptions import ParameterizationError
from tapestry.core.informon import CausalTapestry
from tapestry.core.manifold import Lattice
from tapestry.engine.initial import wavefunction_tapestry

Vector = Union[float, Sequence[float]]


class AnalyticState(object):
    """
    Free Gaussian packet. Scalar ``x0`` and ``k0`` apply to every axis.
    """

    def __init__(self, sigma=1.0, x0=0.0, k0=0.0, dimension=1):
        # type: (float, Vector, Vector, int) -> None
        if sigma <= 0:
            raise ParameterizationError(u"Packet width must be positive, got {0}".format(sigma))
        self.sigma = float(sigma)
        self.dimension = int(dimension)
        self.x0 = np.broadcast_to(np.asarray(x0, dtype=float), (self.dimension,)).copy()
        self.k0 = np.broadcast_to(np.asarray(k0, dtype=float), (self.dimension,)).copy()

    def width(self, t):
        # type: (float) -> float
        """ Standard deviation of the density at time ``t``. """
        return float(np.sqrt(self.sigma ** 2 + t ** 2 / (4 * self.sigma ** 2)))

    def center(self, t):
        # type: (float) -> np.ndarray
        return self.x0 + self.k0 * t

    def value(self, x, t=0.0):
        # type: (np.ndarray, float) -> np.ndarray
        """
        ``psi(x, t)`` at positions of shape ``(..., dimension)``; a 1-D packet also
        takes a plain array of positions.
        """
        if t < 0:
            raise ParameterizationError(u"Evolution time must be non-negative, got {0}".format(t))
        x = np.asarray(x, dtype=float)
        if self.dimension == 1 and (x.ndim == 0 or x.shape[-1] != 1):
            x = x[..., np.newaxis]
        if x.shape[-1] != self.dimension:
            raise ParameterizationError(
                u"Positions of shape {0} do not match dimension {1}".format(x.shape, self.dimension)
            )
        s2 = self.sigma ** 2
        spread = 1 + 1j * t / (2 * s2)
        # Galilean boost of the packet at rest
        shifted = x - self.x0 - self.k0 * t
        at_rest = (2 * np.pi * s2) ** -0.25 / np.sqrt(spread) * np.exp(-shifted ** 2 / (4 * s2 * spread))
        phase = np.exp(1j * (self.k0 * (x - self.x0) - self.k0 ** 2 * t / 2))
        return np.prod(at_rest * phase, axis=-1)

    def __repr__(self):
        return "AnalyticState(sigma={0}, x0={1}, k0={2}, dimension={3})".format(
            self.sigma, list(self.x0), list(self.k0), self.dimension
        )


def analytic_evolve(state, t, lattice):
    # type: (AnalyticState, float, Lattice) -> np.ndarray
    """
    ``psi(site * spacing, t)`` for every site of ``lattice``, in site order.
    """
    if lattice.dimension != state.dimension:
        raise ParameterizationError(
            u"A {0}-dimensional packet cannot be sampled on a {1}-dimensional lattice".format(
                state.dimension, lattice.dimension
            )
        )
    return state.value(lattice.positions(), t)


def spectral_evolve(samples, t, lattice):
    # type: (np.ndarray, float, Lattice) -> np.ndarray
    """
    Free evolution of lattice samples by ``exp(-i |k|^2 t / 2)`` in Fourier space.

    The domain is treated as periodic, so the packet must stay clear of the edges.
    """
    grid = np.asarray(samples, dtype=complex).reshape(lattice.extent)
    k2 = np.zeros(lattice.extent)
    for axis, count in enumerate(lattice.extent):
        k = 2 * np.pi * np.fft.fftfreq(count, d=lattice.spacing)
        shape = [1] * lattice.dimension
        shape[axis] = count
        k2 = k2 + k.reshape(shape) ** 2
    evolved = np.fft.ifftn(np.exp(-1j * k2 * t / 2) * np.fft.fftn(grid))
    return evolved.reshape(-1)


def gaussian_tapestry(lattice, sigma=1.0, x0=0.0, k0=0.0, tick=0, renormalize=True, properties=None):
    # type: (Lattice, float, Vector, Vector, int, bool, Optional[Mapping[str, object]]) -> CausalTapestry
    """ Samples of a free Gaussian packet, renormalized on the lattice by default. """
    state = AnalyticState(sigma, x0, k0, lattice.dimension)
    return wavefunction_tapestry(
        lattice, state.value, tick=tick, renormalize=renormalize, properties=properties, provenance="gaussian"
    )
