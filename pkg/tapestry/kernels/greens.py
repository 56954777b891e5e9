# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Discrete Green's functions of the free Schrodinger equation (hbar = m = 1).

Three kinds are available:

* ``free``: the continuum free-particle kernel sampled at lattice offsets;
* ``lattice``: the exact propagator of the finite-difference lattice equation,
  ``U_k = exp(-i z) i^|k| J_|k|(z)`` per dimension with ``z = tau / spacing^2``;
* ``tabulated``: user-supplied values per integer offset, zero elsewhere.

All kinds depend on the source and target only through their separation.
"""
# stdlib
import logging
from typing import Dict, Iterable, Optional, Tuple

# 3p
import numpy as np
from scipy import special

# tapestry
from tapestry.core.exceptions import ConfigError, ParameterizationError
from tapestry.core.manifold import Lattice

# Logging
log = logging.getLogger("tapestry.kernels")

FREE = "free"
LATTICE = "lattice"
TABULATED = "tabulated"
KINDS = (FREE, LATTICE, TABULATED)

_I_POWERS = np.array([1, 1j, -1, -1j], dtype=complex)

Table = Dict[Tuple[int, ...], complex]


class GreensFunction(object):
    def __init__(
        self,
        kind=FREE,  # type: str
        tau=1.0,  # type: float
        spacing=1.0,  # type: float
        dimension=1,  # type: int
        c_hat=1.0,  # type: float
        table=None,  # type: Optional[Table]
    ):
        # type: (...) -> None
        if kind not in KINDS:
            raise ParameterizationError(u"Unknown kernel kind {0!r}, expected one of {1}".format(kind, KINDS))
        if tau <= 0:
            raise ParameterizationError(u"Time step must be positive, got {0}".format(tau))
        if kind == TABULATED and table is None:
            raise ParameterizationError(u"A tabulated kernel needs a table")
        self.kind = kind
        self.tau = float(tau)
        self.spacing = float(spacing)
        self.dimension = int(dimension)
        self.c_hat = float(c_hat)
        self.table = dict(table or {})  # type: Table
        for offset in self.table:
            if len(offset) != self.dimension:
                raise ParameterizationError(
                    u"Tabulated offset {0} does not match dimension {1}".format(offset, self.dimension)
                )

    @classmethod
    def for_lattice(cls, lattice, kind=FREE, table=None):
        # type: (Lattice, str, Optional[Table]) -> GreensFunction
        return cls(
            kind=kind,
            tau=lattice.tau,
            spacing=lattice.spacing,
            dimension=lattice.dimension,
            c_hat=lattice.c_hat,
            table=table,
        )

    def value(self, delta):
        # type: (np.ndarray) -> np.ndarray
        """
        Kernel at real displacements ``delta`` of shape ``(..., dimension)``.
        """
        delta = np.asarray(delta, dtype=float)
        if delta.ndim == 0 or delta.shape[-1] != self.dimension:
            raise ParameterizationError(
                u"Displacement of shape {0} does not match dimension {1}".format(delta.shape, self.dimension)
            )
        if self.kind == FREE:
            return greens_value(self, delta)
        offsets = np.rint(delta / self.spacing).astype(int)
        if self.kind == LATTICE:
            return self._lattice_value(offsets)
        return self._tabulated_value(offsets)

    def _lattice_value(self, offsets):
        # type: (np.ndarray) -> np.ndarray
        z = self.tau / self.spacing ** 2
        k = np.abs(offsets)
        per_dimension = np.exp(-1j * z) * _I_POWERS[k % 4] * special.jv(k, z) / self.spacing
        return np.prod(per_dimension, axis=-1)

    def _tabulated_value(self, offsets):
        # type: (np.ndarray) -> np.ndarray
        flat = offsets.reshape(-1, self.dimension)
        values = np.array([self.table.get(tuple(int(o) for o in row), 0j) for row in flat], dtype=complex)
        return values.reshape(offsets.shape[:-1])

    def __repr__(self):
        return "GreensFunction(kind={0!r}, tau={1}, spacing={2}, dimension={3})".format(
            self.kind, self.tau, self.spacing, self.dimension
        )


def greens_value(kernel, delta, tau=None):
    # type: (GreensFunction, np.ndarray, Optional[float]) -> np.ndarray
    """
    Free-particle kernel ``(2 pi i tau)^(-d/2) exp(i |dx|^2 / (2 tau))``.

    The principal branch fixes ``i^(-d/2) = exp(-i pi d / 4)``.
    """
    tau = kernel.tau if tau is None else tau
    if tau <= 0:
        raise ParameterizationError(u"Time step must be positive, got {0}".format(tau))
    delta = np.asarray(delta, dtype=float)
    d = kernel.dimension
    r2 = np.sum(delta ** 2, axis=-1)
    prefactor = (2 * np.pi * tau) ** (-d / 2.0) * np.exp(-1j * np.pi * d / 4.0)
    return prefactor * np.exp(1j * r2 / (2 * tau))


def load_table(lines, dimension):
    # type: (Iterable[str], int) -> Table
    """
    Parse a tabulated kernel: ``offset_1 .. offset_d re im`` per row, ``#`` comments.
    """
    table = {}  # type: Table
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != dimension + 2:
            raise ConfigError(
                u"kernel table row needs {0} offsets and re, im; got {1!r}".format(dimension, line), lineno=lineno
            )
        try:
            offset = tuple(int(f) for f in fields[:dimension])
            table[offset] = complex(float(fields[dimension]), float(fields[dimension + 1]))
        except ValueError:
            raise ConfigError(u"kernel table row is not numeric: {0!r}".format(line), lineno=lineno)
    log.debug("Loaded %d tabulated kernel offsets", len(table))
    return table
