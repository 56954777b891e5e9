# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Analytic oracles and the convergence harness.
"""
from tapestry.oracle.analytic import AnalyticState, analytic_evolve, gaussian_tapestry, spectral_evolve  # noqa
from tapestry.oracle.convergence import (  # noqa
    ConvergenceConfig,
    ConvergenceReport,
    convergence_study,
    l2_error,
    one_tick_leak,
    write_convergence_table,
)
