# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Process sequence trees: every play of a round as a root-to-leaf path whose
edges are the emitted informons.
"""
# stdlib
from collections import OrderedDict
import logging
from typing import Iterator, List, Optional, Sequence, Tuple

# tapestry
from tapestry.algebra.expr import ProcessExpr, Product
from tapestry.core.exceptions import CapacityError, EnumerationError, ParameterizationError
from tapestry.core.informon import CausalTapestry, Informon
from tapestry.engine.config import GenerationConfig, play_rng
from tapestry.engine.engine import Play, run_round
from tapestry.engine.strategies import RandomChooser, ScriptedChooser

# Logging
log = logging.getLogger("tapestry.engine")

ENUMERATED = "enumerated"
SAMPLED = "sampled"

Label = Tuple[str, str]


class SequenceNode(object):
    """
    A partial tapestry: the informons emitted along the path from the root.
    """

    def __init__(self, label=None, informon=None, parent=None):
        # type: (Optional[Label], Optional[Informon], Optional[SequenceNode]) -> None
        self.label = label
        self.informon = informon
        self.parent = parent
        self.children = OrderedDict()  # type: OrderedDict
        self.plays = []  # type: List[Play]

    @property
    def is_leaf(self):
        # type: () -> bool
        return not self.children

    @property
    def depth(self):
        # type: () -> int
        node, depth = self, 0
        while node.parent is not None:
            node, depth = node.parent, depth + 1
        return depth

    def path(self):
        # type: () -> List[Informon]
        informons = []
        node = self
        while node.parent is not None:
            informons.append(node.informon)
            node = node.parent
        return informons[::-1]

    def __repr__(self):
        return "SequenceNode(label={0!r}, children={1})".format(self.label, len(self.children))


class SequenceTree(object):
    """
    Trie of plays sharing a prior tapestry.

    ``provenance`` tells whether the tree is a full enumeration or a Monte Carlo
    sample; ``product_mode`` and ``factor_count`` describe the top-level product,
    if any, whose correlated sets the plays recorded.
    """

    def __init__(self, expr, prior, provenance=ENUMERATED):
        # type: (ProcessExpr, CausalTapestry, str) -> None
        self.expr = expr
        self.prior = prior
        self.provenance = provenance
        if isinstance(expr, Product):
            self.product_mode = expr.mode  # type: Optional[str]
            self.factor_count = len(expr.factors)
        else:
            self.product_mode = None
            self.factor_count = 1
        self.root = SequenceNode()
        self.plays = []  # type: List[Play]

    @classmethod
    def from_plays(cls, expr, prior, plays, provenance=SAMPLED):
        # type: (ProcessExpr, CausalTapestry, Sequence[Play], str) -> SequenceTree
        tree = cls(expr, prior, provenance)
        for play in plays:
            tree.add_play(play)
        return tree

    def add_play(self, play):
        # type: (Play) -> SequenceNode
        """ Insert a play; insertion order does not matter. """
        node = self.root
        for event in play.events:
            label = (event.generator, event.informon.id)
            child = node.children.get(label)
            if child is None:
                child = SequenceNode(label, event.informon, node)
                node.children[label] = child
            node = child
        node.plays.append(play)
        self.plays.append(play)
        return node

    def nodes(self):
        # type: () -> Iterator[SequenceNode]
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.children.values())))

    def leaves(self):
        # type: () -> List[SequenceNode]
        return [node for node in self.nodes() if node.is_leaf]

    def maximal_tapestries(self):
        # type: () -> List[CausalTapestry]
        """ Final tapestry of every play, in insertion order. """
        return [play.tapestry for play in self.plays]

    def distinct_tapestries(self):
        # type: () -> List[CausalTapestry]
        """ Maximal tapestries with emission-order relabelings collapsed. """
        distinct = []  # type: List[CausalTapestry]
        for tapestry in self.maximal_tapestries():
            if not any(tapestry == seen for seen in distinct):
                distinct.append(tapestry)
        return distinct

    def __len__(self):
        return len(self.plays)

    def __repr__(self):
        return "SequenceTree(provenance={0!r}, plays={1}, leaves={2})".format(
            self.provenance, len(self.plays), len(self.leaves())
        )


def enumerate_plays(expr, initial, cfg):
    # type: (ProcessExpr, CausalTapestry, GenerationConfig) -> SequenceTree
    """
    Every play of one round, by depth-first replay of the choice sequence.

    Branches that run out of admissible sites are pruned; if every branch does,
    the capacity error is raised. More than ``cfg.budget`` plays is refused.
    """
    tree = SequenceTree(expr, initial, ENUMERATED)
    prefix = []  # type: Optional[List[int]]
    pruned = 0
    last_error = None  # type: Optional[CapacityError]
    while prefix is not None:
        if len(tree.plays) + pruned >= cfg.budget:
            raise EnumerationError(cfg.budget)
        chooser = ScriptedChooser(prefix)
        try:
            _, play = run_round(expr, initial, cfg, chooser, index=len(tree.plays))
        except CapacityError as e:
            pruned += 1
            last_error = e
        else:
            tree.add_play(play)
        prefix = chooser.next_prefix()

    if not tree.plays and last_error is not None:
        raise last_error
    if pruned:
        log.debug("Pruned %d dead-end branches", pruned)
    log.info("Enumerated %d plays (%d leaves)", len(tree.plays), len(tree.leaves()))
    return tree


def sample_plays(expr, initial, cfg, count, seed=None):
    # type: (ProcessExpr, CausalTapestry, GenerationConfig, int, Optional[int]) -> List[Play]
    """
    ``count`` independent one-round plays; play ``i`` depends only on ``(seed, i)``.
    """
    if count < 1:
        raise ParameterizationError("Sample count must be at least 1, got {0}".format(count))
    seed = cfg.seed if seed is None else seed
    plays = []
    for index in range(count):
        chooser = RandomChooser(play_rng(seed, index), cfg.max_redraws, cfg.summand_weighting)
        _, play = run_round(expr, initial, cfg, chooser, index=index)
        plays.append(play)
    log.info("Sampled %d plays with seed %d", count, seed)
    return plays
