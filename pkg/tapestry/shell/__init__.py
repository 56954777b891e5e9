# This file is part of tapestry, licensed under the BSD-3-Clause License.
# stdlib
import argparse
import logging
import sys

# tapestry
from tapestry.core.exceptions import TapestryException
from tapestry.shell.common import report_error
from tapestry.shell.converge import ConvergeClient
from tapestry.shell.enumerate import EnumerateClient
from tapestry.shell.pcm import PcmClient
from tapestry.shell.run import RunClient
from tapestry.shell.sample import SampleClient
from tapestry.version import __version__


def build_parser():
    # type: () -> argparse.ArgumentParser
    parser = argparse.ArgumentParser(
        prog="tapestry",
        description="Generate causal tapestries from process expressions on a lattice",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--config", help="run configuration file", required=True)
    parser.add_argument("--seed", help="override the seed of the configuration", type=int, default=None)
    parser.add_argument("--out", help="override the output directory of the configuration", default=None)
    parser.add_argument("-v", "--verbose", help="log debug output to stderr", action="store_true")
    parser.add_argument("--version", action="version", version="%(prog)s {0}".format(__version__))

    subparsers = parser.add_subparsers(title="Modes", dest="mode")
    subparsers.required = True

    RunClient.setup_parser(subparsers)
    EnumerateClient.setup_parser(subparsers)
    SampleClient.setup_parser(subparsers)
    ConvergeClient.setup_parser(subparsers)
    PcmClient.setup_parser(subparsers)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)

    if args.verbose:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s %(name)s %(levelname)s %(message)s"))
        logger = logging.getLogger("tapestry")
        logger.addHandler(handler)
        logger.setLevel(logging.DEBUG)

    try:
        args.func(args)
    except TapestryException as e:
        report_error(e)
    return 0


if __name__ == "__main__":
    main()
