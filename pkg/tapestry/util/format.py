# This file is part of tapestry, licensed under the BSD-3-Clause License.
# stdlib
import hashlib
import json
from typing import Iterable, List, Optional, Sequence, TextIO

# tapestry
from tapestry.version import __version__


def pretty_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def config_digest(config_text):
    # type: (str) -> str
    return hashlib.sha256(config_text.encode("utf-8")).hexdigest()


def header_lines(kind, config_text, seed, extra=None):
    # type: (str, str, Optional[int], Optional[Sequence[str]]) -> List[str]
    """
    Provenance lines every artifact starts with (without the ``#`` prefix).
    """
    lines = [
        "tapestry {0}".format(__version__),
        "kind: {0}".format(kind),
        "config-sha256: {0}".format(config_digest(config_text)),
        "seed: {0}".format("none" if seed is None else seed),
    ]
    lines.extend(extra or ())
    return lines


def write_header(fp, lines):
    # type: (TextIO, Iterable[str]) -> None
    for line in lines:
        fp.write("# {0}\n".format(line))


def write_table(fp, columns, rows):
    # type: (TextIO, Sequence[str], Iterable[Sequence[object]]) -> None
    """ Tab-delimited rows; floats written with ``repr`` so they read back exactly. """
    fp.write("# {0}\n".format("\t".join(columns)))
    for row in rows:
        fp.write("\t".join(repr(v) if isinstance(v, float) else str(v) for v in row))
        fp.write("\n")
