# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Choice strategies for the nondeterministic steps of a round: which summand of a
sum acts next, and which site a primitive emits at.
"""
# stdlib
import logging
from typing import Callable, List, Optional, Sequence, Tuple

# 3p
import numpy as np

# tapestry
from tapestry.core.exceptions import IntegrityError
from tapestry.engine.config import BORN, UNIFORM

# Logging
log = logging.getLogger("tapestry.engine")

Site = Tuple[int, ...]


class Chooser(object):
    def choose_term(self, weights):
        # type: (Sequence[complex]) -> int
        """ Index of the acting summand among the active ones. """
        raise NotImplementedError()

    def choose_site(self, candidates, blocked):
        # type: (Sequence[Site], Callable[[Site], bool]) -> Optional[Site]
        """ An unblocked site among ``candidates``, or ``None`` when none can be found. """
        raise NotImplementedError()


class RandomChooser(Chooser):
    """
    Uniform site choice with bounded re-draws on blocked sites.
    """

    def __init__(self, rng, max_redraws=64, summand_weighting=UNIFORM):
        # type: (np.random.Generator, int, str) -> None
        self.rng = rng
        self.max_redraws = max_redraws
        self.summand_weighting = summand_weighting
        self.redraws = 0

    def choose_term(self, weights):
        count = len(weights)
        if self.summand_weighting == BORN:
            probabilities = np.abs(np.asarray(weights, dtype=complex)) ** 2
            total = probabilities.sum()
            if total > 0:
                return int(self.rng.choice(count, p=probabilities / total))
        return int(self.rng.integers(count))

    def choose_site(self, candidates, blocked):
        if not candidates:
            return None
        for _ in range(self.max_redraws + 1):
            site = candidates[int(self.rng.integers(len(candidates)))]
            if not blocked(site):
                return site
            self.redraws += 1
            log.debug("Re-drawing blocked site %s", site)
        return None


class ScriptedChooser(Chooser):
    """
    Replays a prefix of choice indices, then always takes the first option.

    The recorded ``decisions`` let an enumerator advance to the next unexplored
    branch of the choice tree.
    """

    def __init__(self, prefix=()):
        # type: (Sequence[int]) -> None
        self.prefix = list(prefix)
        self.decisions = []  # type: List[Tuple[int, int]]

    def _next(self, count):
        # type: (int) -> int
        position = len(self.decisions)
        index = self.prefix[position] if position < len(self.prefix) else 0
        if index >= count:
            raise IntegrityError(
                u"Scripted choice {0} at step {1} has only {2} options: the replay diverged".format(
                    index, position, count
                )
            )
        self.decisions.append((index, count))
        return index

    def choose_term(self, weights):
        return self._next(len(weights))

    def choose_site(self, candidates, blocked):
        options = [site for site in candidates if not blocked(site)]
        if not options:
            return None
        return options[self._next(len(options))]

    def next_prefix(self):
        # type: () -> Optional[List[int]]
        """ Prefix of the next branch in depth-first order, ``None`` once exhausted. """
        for position in range(len(self.decisions) - 1, -1, -1):
            index, count = self.decisions[position]
            if index + 1 < count:
                return [i for i, _ in self.decisions[:position]] + [index + 1]
        return None
