# This file is part of tapestry, licensed under the BSD-3-Clause License.
# stdlib
import logging

# tapestry
from tapestry.algebra.expr import is_graded, regime_of, simplify
from tapestry.core.snapshot import dump_tapestry
from tapestry.engine.engine import run
from tapestry.interpretation.global_interp import interpret, write_grid
from tapestry.measurement.stats import region_probabilities, write_probabilities
from tapestry.shell.common import ArtifactWriter, load_run_config
from tapestry.util.format import write_table
from tapestry.util.diagnostics import RunDiagnostics

log = logging.getLogger("tapestry.shell")


def snapshot_name(tick):
    # type: (int) -> str
    return "tick-{0:04d}.jsonl".format(tick)


class RunClient(object):
    @classmethod
    def setup_parser(cls, subparsers):
        parser = subparsers.add_parser("run", help="Evolve the initial tapestry for the configured number of ticks.")
        parser.add_argument("--ticks", help="override the tick count of the configuration", type=int, default=None)
        parser.add_argument(
            "--interpretation",
            help="also sample the global interpretation of the final tapestry at the lattice sites",
            action="store_true",
        )
        parser.set_defaults(func=cls._run)

    @classmethod
    def _run(cls, args):
        config = load_run_config(args)
        ticks = args.ticks if args.ticks is not None else config.ticks
        cfg = config.generation_config()
        expr = simplify(config.process)
        initial = config.initial_tapestry()
        log.info(
            "Running %s for %d ticks (%s regime, %s)",
            config.expression,
            ticks,
            cfg.regime,
            regime_of(expr, cfg.n, config.lattice.site_count) if is_graded(expr) else "ungraded",
        )

        diagnostics = RunDiagnostics()
        tapestries, plays = run(expr, initial, ticks, cfg, diagnostics=diagnostics)

        writer = ArtifactWriter(config)
        for tapestry in [initial] + tapestries:
            with writer.open(snapshot_name(tapestry.tick), "snapshot", ["tick: {0}".format(tapestry.tick)]) as fp:
                dump_tapestry(tapestry, fp)

        with writer.open("diagnostics.tsv", "diagnostics") as fp:
            write_table(fp, ("tick", "metric", "tags", "value"), diagnostics.flush())

        final = tapestries[-1]
        if config.regions:
            with writer.open("probabilities.tsv", "probabilities", ["tick: {0}".format(final.tick)]) as fp:
                write_probabilities(region_probabilities(final, config.region_list()), fp)

        if args.interpretation:
            with writer.open("interpretation.tsv", "interpretation", ["tick: {0}".format(final.tick)]) as fp:
                write_grid(interpret(final, config.lattice), config.lattice.positions(), fp)

        print("Wrote {0} artifacts to {1}".format(len(writer.written), writer.directory))
