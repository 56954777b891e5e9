# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Global Hilbert-space interpretation of a tapestry:
``Phi(z) = sum_n strength_n g(z - site_n * spacing)`` with the cardinal kernel ``g``.
"""
# stdlib
from typing import Dict, Iterable, Optional, TextIO, Tuple

# 3p
import numpy as np

# tapestry
from tapestry.core.informon import CausalTapestry
from tapestry.core.manifold import Lattice
from tapestry.kernels.sinc import InterpolationKernel

# Evaluation chunk, in grid points
CHUNK = 4096


class GlobalInterpretation(object):
    def __init__(self, sites, strengths, spacing, dimension):
        # type: (np.ndarray, np.ndarray, float, int) -> None
        self.sites = np.asarray(sites, dtype=int).reshape(-1, dimension)
        self.strengths = np.asarray(strengths, dtype=complex).reshape(-1)
        self.spacing = float(spacing)
        self.dimension = int(dimension)
        self.kernel = InterpolationKernel(spacing, dimension)

    @classmethod
    def from_tapestry(cls, tapestry, lattice):
        # type: (CausalTapestry, Lattice) -> GlobalInterpretation
        sites = [n.site for n in tapestry] or np.zeros((0, lattice.dimension), dtype=int)
        return cls(sites, [n.strength for n in tapestry], lattice.spacing, lattice.dimension)

    def __call__(self, z):
        # type: (np.ndarray) -> np.ndarray
        """
        ``Phi`` at real points of shape ``(..., dimension)``; 1-D interpretations
        also take a plain array of positions.
        """
        z = np.asarray(z, dtype=float)
        if self.dimension == 1 and (z.ndim == 0 or z.shape[-1] != 1):
            z = z[..., np.newaxis]
        shape = z.shape[:-1]
        flat = z.reshape(-1, self.dimension)
        values = np.zeros(flat.shape[0], dtype=complex)
        if self.strengths.size:
            positions = self.sites * self.spacing
            for start in range(0, flat.shape[0], CHUNK):
                block = flat[start:start + CHUNK]
                g = self.kernel.value(block[:, np.newaxis, :] - positions[np.newaxis, :, :])
                values[start:start + CHUNK] = g.dot(self.strengths)
        return values.reshape(shape)

    def site_strengths(self):
        # type: () -> Dict[Tuple[int, ...], complex]
        """ Total strength per site: the samples that determine ``Phi``. """
        totals = {}  # type: Dict[Tuple[int, ...], complex]
        for site, strength in zip(self.sites, self.strengths):
            key = tuple(int(s) for s in site)
            totals[key] = totals.get(key, 0j) + strength
        return totals

    def scaled(self, weight):
        # type: (complex) -> GlobalInterpretation
        return GlobalInterpretation(self.sites, self.strengths * weight, self.spacing, self.dimension)

    def __add__(self, other):
        # type: (GlobalInterpretation) -> GlobalInterpretation
        if not isinstance(other, GlobalInterpretation):
            return NotImplemented
        return GlobalInterpretation(
            np.concatenate([self.sites, other.sites]),
            np.concatenate([self.strengths, other.strengths]),
            self.spacing,
            self.dimension,
        )

    def distance(self, other):
        # type: (GlobalInterpretation) -> float
        """ Largest per-site strength difference; zero iff both functions coincide. """
        mine, theirs = self.site_strengths(), other.site_strengths()
        return max([abs(mine.get(s, 0j) - theirs.get(s, 0j)) for s in set(mine) | set(theirs)] or [0.0])

    def __len__(self):
        return int(self.strengths.size)

    def __repr__(self):
        return "GlobalInterpretation(terms={0}, spacing={1}, dimension={2})".format(
            len(self), self.spacing, self.dimension
        )


def interpret(tapestry, lattice):
    # type: (CausalTapestry, Lattice) -> GlobalInterpretation
    return GlobalInterpretation.from_tapestry(tapestry, lattice)


def write_grid(interpretation, points, fp, header=None):
    # type: (GlobalInterpretation, np.ndarray, TextIO, Optional[Iterable[str]]) -> None
    """
    Tab-delimited samples: coordinates, then re, im and ``|Phi|^2``.
    """
    points = np.asarray(points, dtype=float).reshape(-1, interpretation.dimension)
    values = interpretation(points)
    for line in header or ():
        fp.write("# {0}\n".format(line))
    columns = ["z{0}".format(i + 1) for i in range(interpretation.dimension)] + ["re", "im", "abs2"]
    fp.write("# {0}\n".format("\t".join(columns)))
    for point, value in zip(points, values):
        fields = [repr(float(c)) for c in point] + [repr(value.real), repr(value.imag), repr(abs(value) ** 2)]
        fp.write("\t".join(fields))
        fp.write("\n")
