# This file is part of tapestry, licensed under the BSD-3-Clause License.
# stdlib
from __future__ import print_function
import contextlib
import io
import json
import logging
import os
import sys
from typing import Iterator, List, Optional, Sequence, TextIO

# tapestry
from tapestry.core.exceptions import TapestryException
from tapestry.core.snapshot import informon_record
from tapestry.engine.engine import Play
from tapestry.util.config import RunConfig, load_config
from tapestry.util.format import header_lines, write_header

log = logging.getLogger("tapestry.shell")


def print_err(msg):
    print(msg, file=sys.stderr)
    sys.stderr.flush()


def report_error(error):
    # type: (TapestryException) -> None
    """ Print ``ERROR [<category>]: <message>`` and exit with the error's status. """
    print_err(u"ERROR [{0}]: {1}".format(error.category, error))
    sys.exit(error.exit_code)


def report_warnings(warnings):
    # type: (Sequence[str]) -> bool
    for warning in warnings:
        print_err(u"WARNING: {0}".format(warning))
    return bool(warnings)


def load_run_config(args):
    # type: (object) -> RunConfig
    """ The ``--config`` file with the ``--seed`` and ``--out`` overrides applied. """
    config, _ = load_config(args.config)  # type: ignore
    return config.with_overrides(seed=getattr(args, "seed", None), output=getattr(args, "out", None))


class ArtifactWriter(object):
    """
    Opens artifact files under the output directory, each starting with the
    provenance header of the run configuration.
    """

    def __init__(self, config, seed=None):
        # type: (RunConfig, Optional[int]) -> None
        self.config = config
        self.directory = config.output
        self.rendered = config.render(output=False)
        self.seed = config.seed if seed is None else seed
        self.written = []  # type: list

    def path(self, name):
        # type: (str) -> str
        return os.path.join(self.directory, name)

    @contextlib.contextmanager
    def open(self, name, kind, extra=None, seed=None):
        # type: (str, str, Optional[Sequence[str]], Optional[int]) -> Iterator[TextIO]
        if not os.path.isdir(self.directory):
            os.makedirs(self.directory)
        path = self.path(name)
        # LF on every platform
        with io.open(path, "w", encoding="utf-8", newline="\n") as fp:
            write_header(fp, header_lines(kind, self.rendered, self.seed if seed is None else seed, extra))
            yield fp
        self.written.append(path)
        log.info("Wrote %s", path)


def play_records(play):
    # type: (Play) -> Iterator[dict]
    """ One record per generation event; ``set`` numbers the correlated set it belongs to. """
    set_of = []  # type: List[int]
    for number, correlated in enumerate(play.correlated_sets):
        set_of.extend([number] * len(correlated))
    for sequence, event in enumerate(play.events):
        yield {
            "play": play.index,
            "seq": sequence,
            "set": set_of[sequence],
            "generator": event.generator,
            "informon": informon_record(event.informon),
        }


def dump_plays(plays, fp):
    # type: (Sequence[Play], TextIO) -> None
    for play in plays:
        for record in play_records(play):
            fp.write(json.dumps(record, sort_keys=True))
            fp.write("\n")
