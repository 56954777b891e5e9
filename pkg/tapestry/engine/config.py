# This file is part of tapestry, licensed under the BSD-3-Clause License.
# stdlib
from typing import Optional

# 3p
import numpy as np

# tapestry
from tapestry.core.exceptions import ParameterizationError
from tapestry.core.manifold import Lattice

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"
REGIMES = (EXHAUSTIVE, SAMPLED)

UNIFORM = "uniform"
BORN = "born"
SUMMAND_WEIGHTINGS = (UNIFORM, BORN)


class GenerationConfig(object):
    """
    Parameters of a generation run.

    ``n`` is the number of informons each primitive emits per round in the sampled
    regime; the exhaustive regime fills every site of the lattice instead.
    """

    def __init__(
        self,
        lattice,  # type: Lattice
        n=1,  # type: int
        regime=EXHAUSTIVE,  # type: str
        seed=0,  # type: int
        renormalize=True,  # type: bool
        max_redraws=64,  # type: int
        budget=10000,  # type: int
        summand_weighting=UNIFORM,  # type: str
    ):
        # type: (...) -> None
        if regime not in REGIMES:
            raise ParameterizationError(u"Unknown regime {0!r}, expected one of {1}".format(regime, REGIMES))
        if summand_weighting not in SUMMAND_WEIGHTINGS:
            raise ParameterizationError(
                u"Unknown summand weighting {0!r}, expected one of {1}".format(summand_weighting, SUMMAND_WEIGHTINGS)
            )
        if n < 1:
            raise ParameterizationError(u"Informons per round must be at least 1, got {0}".format(n))
        if max_redraws < 0 or budget < 1:
            raise ParameterizationError(u"Re-draw bound and enumeration budget must be positive")
        self.lattice = lattice
        self.n = int(n)
        self.regime = regime
        self.seed = int(seed)
        self.renormalize = bool(renormalize)
        self.max_redraws = int(max_redraws)
        self.budget = int(budget)
        self.summand_weighting = summand_weighting

    def replace(self, **kwargs):
        params = {
            "lattice": self.lattice,
            "n": self.n,
            "regime": self.regime,
            "seed": self.seed,
            "renormalize": self.renormalize,
            "max_redraws": self.max_redraws,
            "budget": self.budget,
            "summand_weighting": self.summand_weighting,
        }
        params.update(kwargs)
        return GenerationConfig(**params)

    def __repr__(self):
        return "GenerationConfig(lattice={0!r}, n={1}, regime={2!r}, seed={3}, renormalize={4})".format(
            self.lattice, self.n, self.regime, self.seed, self.renormalize
        )


def play_rng(seed, index=0):
    # type: (int, Optional[int]) -> np.random.Generator
    """
    Independent generator for play ``index`` of a run seeded with ``seed``.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(int(index or 0),)))
