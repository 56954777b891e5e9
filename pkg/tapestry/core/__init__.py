# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Informons, causal tapestries and the lattice embedding of the causal manifold.
"""
from tapestry.core.exceptions import TapestryException  # noqa
from tapestry.core.informon import (  # noqa
    CausalTapestry,
    Informon,
    freeze_properties,
    verify_antichain,
    verify_content_causality,
)
from tapestry.core.manifold import Lattice, ManifoldPoint, causal_distance  # noqa
