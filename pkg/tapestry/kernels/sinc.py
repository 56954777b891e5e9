# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Separable cardinal-sine interpolation kernel.
"""
# 3p
import numpy as np

# tapestry
from tapestry.core.exceptions import ParameterizationError


class InterpolationKernel(object):
    """
    ``g(z) = prod_j sinc(z_j / spacing)`` with the normalized ``sinc(u) = sin(pi u) / (pi u)``.

    Equals 1 at the origin and vanishes at every other lattice point.
    """

    def __init__(self, spacing, dimension=1):
        # type: (float, int) -> None
        if spacing <= 0:
            raise ParameterizationError(u"Kernel spacing must be positive, got {0}".format(spacing))
        self.spacing = float(spacing)
        self.dimension = int(dimension)

    def value(self, z):
        # type: (np.ndarray) -> np.ndarray
        """
        Evaluate at offsets ``z`` of shape ``(..., dimension)``.
        """
        z = np.asarray(z, dtype=float)
        if z.ndim == 0 or z.shape[-1] != self.dimension:
            raise ParameterizationError(
                u"Offset of shape {0} does not match a {1}-dimensional kernel".format(z.shape, self.dimension)
            )
        return np.prod(np.sinc(z / self.spacing), axis=-1)

    def __repr__(self):
        return "InterpolationKernel(spacing={0}, dimension={1})".format(self.spacing, self.dimension)


def kernel_value(kernel, z):
    # type: (InterpolationKernel, np.ndarray) -> float
    return float(kernel.value(z))
