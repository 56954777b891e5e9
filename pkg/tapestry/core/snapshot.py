# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Line-delimited tapestry snapshots: one JSON record per informon.

Floats are written with their shortest round-tripping representation, so a
dump followed by a load reproduces strengths bit for bit.
"""
# stdlib
import json
from typing import Any, Dict, Iterable, List, Optional, TextIO

# tapestry
from tapestry.core.exceptions import IntegrityError
from tapestry.core.informon import CausalTapestry, Informon
from tapestry.core.manifold import ManifoldPoint


def informon_record(informon):
    # type: (Informon) -> Dict[str, Any]
    return {
        "id": informon.id,
        "tick": informon.tick,
        "site": list(informon.site),
        "re": informon.strength.real,
        "im": informon.strength.imag,
        "properties": dict(informon.properties),
        "content": sorted([source_id, p.tick, list(p.site)] for source_id, p in informon.content),
        "generator": informon.generator,
        "slot": informon.slot,
    }


def informon_from_record(record):
    # type: (Dict[str, Any]) -> Informon
    try:
        return Informon(
            ManifoldPoint(record["tick"], record["site"]),
            complex(record["re"], record["im"]),
            properties=record.get("properties"),
            content=[(c[0], ManifoldPoint(c[1], c[2])) for c in record.get("content", [])],
            generator=record.get("generator"),
            slot=record.get("slot", 0),
            id=record["id"],
        )
    except (KeyError, IndexError, TypeError) as e:
        raise IntegrityError(u"Malformed informon record {0!r}: {1}".format(record, e))


def dumps_line(informon):
    # type: (Informon) -> str
    return json.dumps(informon_record(informon), sort_keys=True)


def dump_tapestry(tapestry, fp):
    # type: (CausalTapestry, TextIO) -> None
    for informon in tapestry:
        fp.write(dumps_line(informon))
        fp.write("\n")


def load_informons(lines):
    # type: (Iterable[str]) -> List[Informon]
    informons = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        informons.append(informon_from_record(json.loads(line)))
    return informons


def load_tapestry(lines, tick=None, provenance=None):
    # type: (Iterable[str], Optional[int], Optional[str]) -> CausalTapestry
    informons = load_informons(lines)
    if tick is None:
        if not informons:
            raise IntegrityError(u"Cannot infer the tick of an empty snapshot")
        tick = informons[0].tick
    return CausalTapestry(tick, informons, provenance=provenance)
