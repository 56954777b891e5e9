# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Interpolation kernel, discrete Green's functions and strength propagation.
"""
from tapestry.kernels.greens import GreensFunction, greens_value  # noqa
from tapestry.kernels.propagation import (  # noqa
    lightcone_sources,
    propagate_strength,
    renormalize_tapestry,
)
from tapestry.kernels.sinc import InterpolationKernel, kernel_value  # noqa
