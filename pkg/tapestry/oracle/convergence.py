# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Convergence of exhaustive-regime runs towards the analytic free evolution.
"""
# stdlib
import logging
import math
import time
from typing import Iterable, List, Optional, Sequence, TextIO

# 3p
import numpy as np

# tapestry
from tapestry.algebra.expr import Primitive
from tapestry.core.exceptions import GridMismatchError, PaddingError, ParameterizationError
from tapestry.core.informon import CausalTapestry
from tapestry.core.manifold import Lattice
from tapestry.engine.config import EXHAUSTIVE, GenerationConfig
from tapestry.engine.engine import run, run_round
from tapestry.kernels.greens import LATTICE
from tapestry.oracle.analytic import AnalyticState, analytic_evolve, gaussian_tapestry

# Logging
log = logging.getLogger("tapestry.oracle")

# Packet widths kept clear of the domain edge
PADDING_WIDTHS = 6


def l2_error(a, b, spacing, dimension=1, align_phase=False):
    # type: (np.ndarray, np.ndarray, float, int, bool) -> float
    """
    ``(sum |a - b|^2 spacing^d)^(1/2)``, optionally after rotating ``a`` by the
    global phase that brings it closest to ``b``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise GridMismatchError(u"Cannot compare grids of shapes {0} and {1}".format(a.shape, b.shape))
    if align_phase:
        overlap = np.vdot(a, b)
        if abs(overlap) > 0:
            a = a * (overlap / abs(overlap))
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2) * spacing ** dimension))


def tapestry_samples(tapestry, lattice):
    # type: (CausalTapestry, Lattice) -> np.ndarray
    """ Strength per lattice site, in site order, zero where no informon sits. """
    totals = tapestry.site_strengths()
    return np.array([totals.get(site, 0j) for site in lattice.sites()], dtype=complex)


def required_half_width(state, t):
    # type: (AnalyticState, float) -> float
    """ ``|x0| + |k0| t + 6 width(t)``: the packet stays this far from the domain edge. """
    drift = float(np.max(np.abs(state.x0) + np.abs(state.k0) * t))
    return drift + PADDING_WIDTHS * state.width(t)


class ConvergenceConfig(object):
    """
    Sweep parameters. ``radius`` defaults to a light cone covering the whole
    domain; ``half_width`` defaults to the padding requirement.
    """

    def __init__(
        self,
        spacings=(0.4, 0.2, 0.1, 0.05),  # type: Sequence[float]
        time=1.0,  # type: float
        sigma=1.0,  # type: float
        x0=0.0,  # type: float
        k0=1.0,  # type: float
        ticks=4,  # type: int
        kernel=LATTICE,  # type: str
        radius=None,  # type: Optional[float]
        half_width=None,  # type: Optional[float]
        renormalize=True,  # type: bool
    ):
        # type: (...) -> None
        if len(spacings) < 2:
            raise ParameterizationError(u"A convergence study needs at least two spacings")
        if time <= 0 or ticks < 1:
            raise ParameterizationError(u"Final time and tick count must be positive")
        self.spacings = sorted((float(s) for s in spacings), reverse=True)
        self.time = float(time)
        self.sigma = float(sigma)
        self.x0 = float(x0)
        self.k0 = float(k0)
        self.ticks = int(ticks)
        self.kernel = kernel
        self.radius = radius
        self.half_width = half_width
        self.renormalize = renormalize

    @property
    def tau(self):
        # type: () -> float
        return self.time / self.ticks

    def state(self):
        # type: () -> AnalyticState
        return AnalyticState(self.sigma, self.x0, self.k0)

    def lattice(self, spacing):
        # type: (float) -> Lattice
        """ 1-D lattice for ``spacing``; raises :class:`PaddingError` on a short domain. """
        required = required_half_width(self.state(), self.time)
        half_width = required if self.half_width is None else float(self.half_width)
        if half_width < required:
            raise PaddingError(
                u"Domain half-width {0:g} is below the padding requirement {1:g} (|x0| + |k0| T + {2} width(T))".format(
                    half_width, required, PADDING_WIDTHS
                )
            )
        half_sites = int(math.ceil(half_width / spacing))
        radius = self.radius if self.radius is not None else (2 * half_sites + 1) * spacing
        return Lattice(1, 2 * half_sites + 1, spacing, self.tau, radius / self.tau)


class ConvergenceRow(object):
    __slots__ = ("spacing", "tau", "time", "error", "leak", "runtime")

    def __init__(self, spacing, tau, time, error, leak, runtime):
        # type: (float, float, float, float, float, float) -> None
        self.spacing = spacing
        self.tau = tau
        self.time = time
        self.error = error
        self.leak = leak
        self.runtime = runtime

    def __repr__(self):
        return "ConvergenceRow(spacing={0}, error={1:.3e}, leak={2:.3e})".format(self.spacing, self.error, self.leak)


class ConvergenceReport(object):
    def __init__(self, rows, order):
        # type: (List[ConvergenceRow], float) -> None
        self.rows = rows
        self.order = order

    @property
    def monotone(self):
        # type: () -> bool
        """ Error strictly decreases at every refinement. """
        errors = [row.error for row in self.rows]
        return all(b < a for a, b in zip(errors, errors[1:]))

    def __repr__(self):
        return "ConvergenceReport(rows={0}, order={1:.3f})".format(len(self.rows), self.order)


def fitted_order(spacings, errors):
    # type: (Sequence[float], Sequence[float]) -> float
    """ Slope of log error against log spacing. """
    slope, _ = np.polyfit(np.log(spacings), np.log(errors), 1)
    return float(slope)


def one_tick_leak(lattice, state, kernel=LATTICE):
    # type: (Lattice, AnalyticState, str) -> float
    """
    ``|1 - sum |strength|^2 spacing^d|`` after one unrenormalized tick from the
    normalized samples of ``state``.
    """
    initial = gaussian_tapestry(lattice, state.sigma, state.x0, state.k0)
    cfg = GenerationConfig(lattice, regime=EXHAUSTIVE, renormalize=False)
    tapestry, _ = run_round(Primitive("psi", kernel=kernel), initial, cfg)
    return abs(1.0 - tapestry.norm(lattice))


def convergence_study(config):
    # type: (ConvergenceConfig) -> ConvergenceReport
    """
    Evolve the packet to ``config.time`` at every spacing and compare with the
    closed form, phase-aligned. The leak column is the largest per-tick deviation
    of the pre-renormalization norm from one.
    """
    state = config.state()
    expr = Primitive("psi", kernel=config.kernel)
    rows = []  # type: List[ConvergenceRow]
    for spacing in config.spacings:
        started = time.time()
        lattice = config.lattice(spacing)
        initial = gaussian_tapestry(lattice, state.sigma, state.x0, state.k0)
        cfg = GenerationConfig(lattice, regime=EXHAUSTIVE, renormalize=config.renormalize)
        tapestries, plays = run(expr, initial, config.ticks, cfg)
        samples = tapestry_samples(tapestries[-1], lattice)
        exact = analytic_evolve(state, config.time, lattice)
        error = l2_error(samples, exact, spacing, align_phase=True)
        leak = max(abs(1.0 - play.norm) for play in plays)
        row = ConvergenceRow(spacing, config.tau, config.time, error, leak, time.time() - started)
        log.info("Spacing %g: L2 error %.3e, leak %.3e over %d sites", spacing, error, leak, lattice.site_count)
        rows.append(row)
    order = fitted_order([r.spacing for r in rows], [r.error for r in rows])
    return ConvergenceReport(rows, order)


def write_convergence_table(report, fp, header=None):
    # type: (ConvergenceReport, TextIO, Optional[Iterable[str]]) -> None
    for line in header or ():
        fp.write("# {0}\n".format(line))
    fp.write("# fitted_order\t{0!r}\n".format(report.order))
    fp.write("# spacing\ttau\tT\tl2_error\tnorm_leak\truntime\n")
    for row in report.rows:
        fp.write(
            "\t".join(repr(float(v)) for v in (row.spacing, row.tau, row.time, row.error, row.leak, row.runtime))
        )
        fp.write("\n")
