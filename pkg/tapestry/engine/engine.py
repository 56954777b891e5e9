# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Generation engine: lets a process expression act on a causal tapestry.

One tick is one round. The expression is compiled into a tree of emitters that
mirrors its structure:

* a primitive emits one informon per step;
* a sum lets one of its active summands act per step;
* a product lets every factor act per step, the emissions of one top-level step
  forming a correlated set;
* the zero process emits nothing.

Two emissions at the same (point, properties) collide. The innermost sum or
product enclosing both emitters decides: exclusive blocks the site, free merges
the contributions additively.
"""
# stdlib
from collections import OrderedDict
import logging
from typing import Dict, List, Optional, Sequence, Tuple

# 3p
import numpy as np

# tapestry
from tapestry.algebra.expr import EXCLUSIVE, Concat, Primitive, ProcessExpr, Product, Sum, Zero
from tapestry.core.exceptions import CapacityError, ConstructionError, ParameterizationError, StructureError
from tapestry.core.informon import CausalTapestry, Informon, Properties, verify_antichain
from tapestry.core.manifold import ManifoldPoint
from tapestry.engine.config import EXHAUSTIVE, GenerationConfig, play_rng
from tapestry.engine.strategies import Chooser, RandomChooser
from tapestry.kernels.greens import GreensFunction
from tapestry.kernels.propagation import SourceIndex
from tapestry.util.diagnostics import RunDiagnostics

# Logging
log = logging.getLogger("tapestry.engine")

Path = Tuple[int, ...]
CorrelatedSet = Tuple[Tuple[int, str], ...]


class GenerationEvent(object):
    """
    One emission: the acting subprocess and the informon contribution it made.

    Contributions of free sums or products to a shared (point, properties) are
    separate events; the sealed tapestry adds them up.
    """

    __slots__ = ("generator", "informon")

    def __init__(self, generator, informon):
        # type: (str, Informon) -> None
        self.generator = generator
        self.informon = informon

    def __eq__(self, other):
        if not isinstance(other, GenerationEvent):
            return NotImplemented
        return self.generator == other.generator and self.informon == other.informon

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "GenerationEvent({0!r}, {1!r})".format(self.generator, self.informon.id)


class Play(object):
    """
    A realized generation history of one round.
    """

    def __init__(
        self,
        events,  # type: Sequence[GenerationEvent]
        correlated_sets,  # type: Sequence[CorrelatedSet]
        tick,  # type: int
        tapestry,  # type: CausalTapestry
        scale=None,  # type: Optional[float]
        norm=None,  # type: Optional[float]
        index=0,  # type: int
    ):
        # type: (...) -> None
        self.events = tuple(events)
        self.correlated_sets = tuple(correlated_sets)
        self.tick = tick
        self.tapestry = tapestry
        self.scale = scale
        self.norm = norm
        self.index = index

    def replay(self):
        # type: () -> CausalTapestry
        """ Rebuild the final tapestry from the event list alone. """
        return assemble(self.events, self.tick, self.scale, self.tapestry.provenance)

    def __repr__(self):
        return "Play(index={0}, tick={1}, events={2})".format(self.index, self.tick, len(self.events))


def assemble(events, tick, scale=None, provenance=None):
    # type: (Sequence[GenerationEvent], int, Optional[float], Optional[str]) -> CausalTapestry
    """
    Seal emitted contributions into a tapestry, merging contributions that share
    a (point, properties) and applying a renormalization factor last.
    """
    merged = OrderedDict()  # type: OrderedDict
    for event in events:
        informon = event.informon
        entry = merged.get(informon.key)
        if entry is None:
            merged[informon.key] = [informon.strength, set(informon.content), [event.generator], informon.slot]
            continue
        entry[0] += informon.strength
        entry[1] |= informon.content
        if event.generator not in entry[2]:
            entry[2].append(event.generator)

    informons = [
        Informon(point, strength, properties, content, "+".join(generators), slot)
        for (point, properties), (strength, content, generators, slot) in merged.items()
    ]
    tapestry = CausalTapestry(tick, informons, provenance=provenance)
    if scale is not None:
        tapestry = tapestry.scaled(scale)
    return tapestry


def _path_label(path):
    # type: (Path) -> str
    return ".".join(str(p) for p in path) if path else "root"


class _Round(object):
    """
    Mutable state of one round in progress.
    """

    def __init__(self, current, cfg, chooser):
        # type: (CausalTapestry, GenerationConfig, Chooser) -> None
        self.cfg = cfg
        self.lattice = cfg.lattice
        self.chooser = chooser
        self.tick = current.tick + 1
        self.sources = SourceIndex(current, cfg.lattice)
        self.sites = cfg.lattice.sites()
        self.modes = {}  # type: Dict[Path, str]
        self.occupied = {}  # type: Dict[Tuple[ManifoldPoint, Properties], List[Path]]
        self.events = []  # type: List[GenerationEvent]
        self.empty_cones = 0
        self._kernels = {}  # type: Dict[Tuple[str, int], GreensFunction]

    def kernel_for(self, primitive):
        # type: (Primitive) -> GreensFunction
        key = (primitive.kernel, id(primitive.table))
        kernel = self._kernels.get(key)
        if kernel is None:
            kernel = GreensFunction.for_lattice(self.lattice, primitive.kernel, primitive.table)
            self._kernels[key] = kernel
        return kernel

    def blocked(self, path, key):
        # type: (Path, Tuple[ManifoldPoint, Properties]) -> bool
        for other in self.occupied.get(key, ()):
            if other == path:
                return True
            common = 0
            while common < min(len(path), len(other)) and path[common] == other[common]:
                common += 1
            if self.modes[path[:common]] == EXCLUSIVE:
                return True
        return False

    def emit(self, emitter, site):
        # type: (_PrimitiveEmitter, Tuple[int, ...]) -> Informon
        point = ManifoldPoint(self.tick, site)
        primitive = emitter.primitive
        indices = self.sources.within(point, primitive.properties)
        if not indices:
            self.empty_cones += 1
        strength = emitter.weight * self.sources.propagate(point, indices, emitter.kernel)
        content = [(self.sources.informons[i].id, self.sources.informons[i].point) for i in indices]
        informon = Informon(point, strength, primitive.properties, content, emitter.generator, emitter.slot)
        self.occupied.setdefault(informon.key, []).append(emitter.path)
        self.events.append(GenerationEvent(emitter.generator, informon))
        return informon


class _Emitter(object):
    def remaining(self):
        # type: () -> int
        raise NotImplementedError()

    def step(self, state):
        # type: (_Round) -> List[Tuple[int, str]]
        raise NotImplementedError()


class _ZeroEmitter(_Emitter):
    def remaining(self):
        return 0

    def step(self, state):
        return []


class _PrimitiveEmitter(_Emitter):
    def __init__(self, primitive, path, weight, slot, state):
        # type: (Primitive, Path, complex, int, _Round) -> None
        self.primitive = primitive
        self.path = path
        self.weight = weight
        self.slot = slot
        self.generator = "{0}@{1}".format(primitive.name, _path_label(path))
        self.kernel = state.kernel_for(primitive)
        self.exhaustive = state.cfg.regime == EXHAUSTIVE
        site_count = len(state.sites)
        self.count = site_count if self.exhaustive else (primitive.n or state.cfg.n)
        if self.count > site_count:
            raise CapacityError(self.generator, state.tick)
        self.used = set()  # type: set
        self.emitted = 0

    def remaining(self):
        return self.count - self.emitted

    def step(self, state):
        properties = self.primitive.properties

        def blocked(site):
            return state.blocked(self.path, (ManifoldPoint(state.tick, site), properties))

        if self.exhaustive:
            site = state.sites[self.emitted]
            if blocked(site):
                raise CapacityError(self.generator, state.tick)
        else:
            candidates = [s for s in state.sites if s not in self.used]
            site = state.chooser.choose_site(candidates, blocked)
            if site is None:
                raise CapacityError(self.generator, state.tick)
        informon = state.emit(self, site)
        self.used.add(site)
        self.emitted += 1
        return [(self.slot, informon.id)]


class _SumEmitter(_Emitter):
    def __init__(self, children, weights):
        # type: (List[_Emitter], List[complex]) -> None
        self.children = children
        self.weights = weights

    def remaining(self):
        return sum(child.remaining() for child in self.children)

    def step(self, state):
        active = [i for i, child in enumerate(self.children) if child.remaining() > 0]
        choice = state.chooser.choose_term([self.weights[i] for i in active])
        return self.children[active[choice]].step(state)


class _ProductEmitter(_Emitter):
    def __init__(self, children):
        # type: (List[_Emitter]) -> None
        self.children = children

    def remaining(self):
        return max([child.remaining() for child in self.children] or [0])

    def step(self, state):
        emitted = []  # type: List[Tuple[int, str]]
        for child in self.children:
            if child.remaining() > 0:
                emitted.extend(child.step(state))
        return emitted


def _build(expr, path, weight, slot, state):
    # type: (ProcessExpr, Path, complex, Optional[int], _Round) -> _Emitter
    if isinstance(expr, Zero):
        return _ZeroEmitter()
    if isinstance(expr, Primitive):
        return _PrimitiveEmitter(expr, path, weight, slot or 0, state)
    if isinstance(expr, Sum):
        state.modes[path] = expr.mode
        children = [_build(e, path + (i,), weight * w, slot, state) for i, (w, e) in enumerate(expr.terms)]
        return _SumEmitter(children, [w for w, _ in expr.terms])
    if isinstance(expr, Product):
        state.modes[path] = expr.mode
        children = [
            _build(f, path + (i,), weight, i if slot is None else slot, state) for i, f in enumerate(expr.factors)
        ]
        return _ProductEmitter(children)
    if isinstance(expr, Concat):
        raise StructureError(u"Concatenation has no generation semantics: {0!r}".format(expr))
    raise TypeError("Not a process expression: {0!r}".format(expr))


def run_round(
    expr,  # type: ProcessExpr
    current,  # type: CausalTapestry
    cfg,  # type: GenerationConfig
    chooser=None,  # type: Optional[Chooser]
    diagnostics=None,  # type: Optional[RunDiagnostics]
    index=0,  # type: int
):
    # type: (...) -> Tuple[CausalTapestry, Play]
    """
    Let ``expr`` act on ``current`` for one round and seal the next tapestry.
    """
    if chooser is None:
        chooser = RandomChooser(play_rng(cfg.seed, index), cfg.max_redraws, cfg.summand_weighting)
    if log.isEnabledFor(logging.DEBUG) and not verify_antichain(current, cfg.lattice):
        raise ConstructionError(u"Tapestry at tick {0} is not an antichain".format(current.tick))
    redraws_before = getattr(chooser, "redraws", 0)
    state = _Round(current, cfg, chooser)
    root = _build(expr, (), 1, None, state)

    correlated_sets = []  # type: List[CorrelatedSet]
    while root.remaining() > 0:
        correlated_sets.append(tuple(root.step(state)))

    if state.events and state.empty_cones == len(state.events):
        log.warning(
            "Degenerate propagation at tick %d: no emission has a source in its light cone, all strengths vanish",
            state.tick,
        )

    provenance = "play:{0}".format(index)
    tapestry = assemble(state.events, state.tick, provenance=provenance)
    norm = tapestry.norm(cfg.lattice)
    scale = None
    if cfg.renormalize and len(tapestry):
        if norm > 0:
            scale = float(1.0 / np.sqrt(norm))
            tapestry = tapestry.scaled(scale)
        else:
            log.warning("Skipping renormalization at tick %d: all strengths vanish", state.tick)

    if diagnostics is not None:
        diagnostics.gauge(state.tick, "norm", norm)
        diagnostics.increment(state.tick, "emissions", len(state.events))
        diagnostics.increment(state.tick, "redraws", getattr(chooser, "redraws", 0) - redraws_before)
        for informon in tapestry:
            diagnostics.histogram(state.tick, "strength.abs", abs(informon.strength))

    log.debug(
        "Round to tick %d: %d emissions, %d informons, norm %.6g", state.tick, len(state.events), len(tapestry), norm
    )
    play = Play(state.events, correlated_sets, state.tick, tapestry, scale=scale, norm=norm, index=index)
    return tapestry, play


def run(
    expr,  # type: ProcessExpr
    initial,  # type: CausalTapestry
    ticks,  # type: int
    cfg,  # type: GenerationConfig
    chooser=None,  # type: Optional[Chooser]
    diagnostics=None,  # type: Optional[RunDiagnostics]
):
    # type: (...) -> Tuple[List[CausalTapestry], List[Play]]
    """
    Fold :func:`run_round` over ``ticks`` rounds, one choice stream for the whole run.
    """
    if ticks < 1:
        raise ParameterizationError("A run needs at least one tick, got {0}".format(ticks))
    if chooser is None:
        chooser = RandomChooser(play_rng(cfg.seed, 0), cfg.max_redraws, cfg.summand_weighting)
    tapestries = []  # type: List[CausalTapestry]
    plays = []  # type: List[Play]
    current = initial
    for _ in range(ticks):
        current, play = run_round(expr, current, cfg, chooser, diagnostics)
        tapestries.append(current)
        plays.append(play)
    log.info("Ran %d ticks from tick %d", ticks, initial.tick)
    return tapestries, plays
