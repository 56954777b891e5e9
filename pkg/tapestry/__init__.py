# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Tapestry generates discrete quantum dynamics from process expressions.
It contains:
* tapestry.core: lattice points, informons, causal tapestries and snapshots.
* tapestry.kernels: the sinc interpolation kernel and Green's-function propagation.
* tapestry.algebra: process expressions, their normal form and their text syntax.
* tapestry.engine: generation rounds, plays and sequence trees.
* tapestry.interpretation: global and configuration-space interpretations, process covering maps.
* tapestry.measurement: detection probabilities over regions.
* tapestry.oracle: analytic free evolution and convergence studies.
* tapestry.shell: the ``tapestry`` command-line tool.
"""
# stdlib
import logging

# tapestry
from tapestry.version import __version__  # noqa

# Loggers
for _name in ("core", "kernels", "algebra", "engine", "interpretation", "measurement", "oracle", "util", "shell"):
    logging.getLogger("tapestry." + _name).addHandler(logging.NullHandler())
