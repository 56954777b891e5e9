# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Informons and causal tapestries.
"""
# stdlib
import logging
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

# tapestry
from tapestry.core.exceptions import ConstructionError, IntegrityError
from tapestry.core.manifold import Lattice, ManifoldPoint

# Logging
log = logging.getLogger("tapestry.core")

INITIAL_GENERATOR = "initial"

Properties = Tuple[Tuple[str, str], ...]
ContentEdge = Tuple[str, ManifoldPoint]


def freeze_properties(properties):
    # type: (Optional[Mapping[str, object]]) -> Properties
    """
    Canonical, hashable form of a property map.
    """
    if not properties:
        return ()
    if isinstance(properties, tuple):
        properties = dict(properties)
    return tuple(sorted((str(k), str(v)) for k, v in properties.items()))


def properties_key(properties):
    # type: (Properties) -> str
    return "&".join("{0}={1}".format(k, v) for k, v in properties)


def is_submap(small, large):
    # type: (Properties, Properties) -> bool
    large_map = dict(large)
    return all(large_map.get(k) == v for k, v in small)


def informon_id(point, properties):
    # type: (ManifoldPoint, Properties) -> str
    """
    Content-addressed identifier: unique within a run because a tapestry holds at
    most one informon per (point, properties).
    """
    return "{0}:{1}:{2}".format(point.tick, ",".join(str(s) for s in point.site), properties_key(properties))


class Informon(object):
    """
    The primitive generated event: a manifold point, a complex strength, property
    tags and the causal content it was built from.

    ``generator`` names the primitive subprocess that created it and ``slot`` the
    product factor it belongs to (0 outside products).
    """

    __slots__ = ("id", "point", "strength", "properties", "content", "generator", "slot")

    def __init__(
        self,
        point,  # type: ManifoldPoint
        strength,  # type: complex
        properties=None,  # type: Optional[Mapping[str, object]]
        content=None,  # type: Optional[Iterable[ContentEdge]]
        generator=INITIAL_GENERATOR,  # type: Optional[str]
        slot=0,  # type: int
        id=None,  # type: Optional[str]
    ):
        # type: (...) -> None
        self.point = point
        self.strength = complex(strength)
        self.properties = freeze_properties(properties)
        self.content = frozenset(content or ())  # type: FrozenSet[ContentEdge]
        self.generator = generator
        self.slot = int(slot)
        self.id = id or informon_id(point, self.properties)
        for _, prior in self.content:
            if prior.tick >= point.tick:
                raise ConstructionError(
                    u"Informon {0} references {1}, which is not strictly earlier".format(self.id, prior)
                )

    @property
    def tick(self):
        # type: () -> int
        return self.point.tick

    @property
    def site(self):
        # type: () -> Tuple[int, ...]
        return self.point.site

    @property
    def key(self):
        # type: () -> Tuple[ManifoldPoint, Properties]
        """ (point, properties): strength is a function of this pair within one tapestry. """
        return (self.point, self.properties)

    def replace(self, **kwargs):
        params = {
            "point": self.point,
            "strength": self.strength,
            "properties": self.properties,
            "content": self.content,
            "generator": self.generator,
            "slot": self.slot,
            "id": self.id,
        }
        params.update(kwargs)
        return Informon(**params)

    def __eq__(self, other):
        if not isinstance(other, Informon):
            return NotImplemented
        return (
            self.id == other.id
            and self.point == other.point
            and self.strength == other.strength
            and self.properties == other.properties
            and self.content == other.content
            and self.generator == other.generator
            and self.slot == other.slot
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return "Informon(id={0!r}, strength={1!r}, generator={2!r}, slot={3})".format(
            self.id, self.strength, self.generator, self.slot
        )


class CausalTapestry(object):
    """
    A finite antichain of informons sharing one tick. Immutable once built.
    """

    def __init__(self, tick, informons=(), provenance=None):
        # type: (int, Iterable[Informon], Optional[str]) -> None
        by_key = {}  # type: Dict[Tuple[ManifoldPoint, Properties], Informon]
        for informon in informons:
            if informon.tick != tick:
                raise ConstructionError(
                    u"Informon {0} has tick {1}, tapestry has tick {2}".format(informon.id, informon.tick, tick)
                )
            existing = by_key.get(informon.key)
            if existing is not None:
                if existing.strength != informon.strength:
                    raise ConstructionError(
                        u"Conflicting strengths {0!r} and {1!r} at {2} with properties {3}".format(
                            existing.strength, informon.strength, informon.point, properties_key(informon.properties)
                        )
                    )
                continue
            by_key[informon.key] = informon

        self.tick = int(tick)
        self.informons = tuple(sorted(by_key.values(), key=lambda n: n.id))  # type: Tuple[Informon, ...]
        self.provenance = provenance
        self._by_id = dict((n.id, n) for n in self.informons)
        if len(self._by_id) != len(self.informons):
            raise ConstructionError(u"Duplicate informon identifiers in tapestry at tick {0}".format(tick))

    def __iter__(self):
        # type: () -> Iterator[Informon]
        return iter(self.informons)

    def __len__(self):
        # type: () -> int
        return len(self.informons)

    def __contains__(self, informon_id):
        return informon_id in self._by_id

    def get(self, informon_id):
        # type: (str) -> Optional[Informon]
        return self._by_id.get(informon_id)

    def strengths(self):
        # type: () -> List[complex]
        return [n.strength for n in self.informons]

    def norm(self, lattice):
        # type: (Lattice) -> float
        """ Sum of |strength|^2 weighted by the lattice cell volume. """
        return sum(abs(n.strength) ** 2 for n in self.informons) * lattice.cell_volume

    def scaled(self, factor, provenance=None):
        # type: (complex, Optional[str]) -> CausalTapestry
        return CausalTapestry(
            self.tick,
            [n.replace(strength=n.strength * factor) for n in self.informons],
            provenance=provenance or self.provenance,
        )

    def site_strengths(self):
        # type: () -> Dict[Tuple[int, ...], complex]
        """ Total strength per site, summed over properties. """
        totals = {}  # type: Dict[Tuple[int, ...], complex]
        for n in self.informons:
            totals[n.site] = totals.get(n.site, 0j) + n.strength
        return totals

    def __eq__(self, other):
        if not isinstance(other, CausalTapestry):
            return NotImplemented
        return self.tick == other.tick and self.informons == other.informons

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "CausalTapestry(tick={0}, informons={1}, provenance={2!r})".format(
            self.tick, len(self.informons), self.provenance
        )


def verify_antichain(tapestry, lattice):
    # type: (CausalTapestry, Lattice) -> bool
    """
    True iff every pair of informons at distinct points is space-like separated.

    Informons sharing a point (different properties) sit on the same event
    location and are not causally related to each other.
    """
    informons = tapestry.informons
    for i, a in enumerate(informons):
        for b in informons[i + 1:]:
            if a.point == b.point:
                continue
            if lattice.causal_distance(a.point, b.point) >= 0:
                return False
    return True


def verify_content_causality(tapestry, prior, lattice):
    # type: (CausalTapestry, Sequence[CausalTapestry], Lattice) -> bool
    """
    True iff every content edge is time-like or null and resolves to an informon of
    a prior tapestry. A dangling reference raises :class:`IntegrityError`.
    """
    if isinstance(prior, CausalTapestry):
        prior = [prior]
    index = {}  # type: Dict[str, Informon]
    for earlier in prior:
        for n in earlier:
            index[n.id] = n

    for informon in tapestry:
        for source_id, source_point in informon.content:
            source = index.get(source_id)
            if source is None or source.point != source_point:
                raise IntegrityError(
                    u"Informon {0} references {1} at {2}, absent from the prior tapestries".format(
                        informon.id, source_id, source_point
                    )
                )
            if not lattice.is_causal(informon.point, source_point):
                log.debug("Space-like content edge %s -> %s", source_id, informon.id)
                return False
    return True
