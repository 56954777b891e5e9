# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Detection probabilities from strengths, and their consistency with the interpreted density.
"""
from tapestry.measurement.stats import (  # noqa
    Region,
    cell_quadrature,
    detection_probability,
    empirical_vs_interpretation,
    interpreted_probability,
    partition,
    site_weights,
    write_probabilities,
)
