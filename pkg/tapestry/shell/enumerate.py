# This file is part of tapestry, licensed under the BSD-3-Clause License.
# tapestry
from tapestry.algebra.expr import simplify
from tapestry.engine.tree import enumerate_plays
from tapestry.shell.common import ArtifactWriter, dump_plays, load_run_config
from tapestry.util.format import pretty_json, write_table


class EnumerateClient(object):
    @classmethod
    def setup_parser(cls, subparsers):
        parser = subparsers.add_parser("enumerate", help="Enumerate every play of one round.")
        parser.add_argument("--budget", help="override the enumeration budget", type=int, default=None)
        parser.set_defaults(func=cls._enumerate)

    @classmethod
    def _enumerate(cls, args):
        config = load_run_config(args)
        cfg = config.generation_config()
        if args.budget is not None:
            cfg = cfg.replace(budget=args.budget)
        tree = enumerate_plays(simplify(config.process), config.initial_tapestry(), cfg)

        writer = ArtifactWriter(config)
        with writer.open("plays.jsonl", "play-log", ["provenance: {0}".format(tree.provenance)]) as fp:
            dump_plays(tree.plays, fp)
        with writer.open("leaves.tsv", "sequence-tree") as fp:
            write_table(
                fp,
                ("play", "depth", "informons", "norm"),
                ((play.index, len(play.events), len(play.tapestry), play.norm) for play in tree.plays),
            )

        summary = {
            "plays": len(tree.plays),
            "leaves": len(tree.leaves()),
            "distinct_tapestries": len(tree.distinct_tapestries()),
            "nodes": sum(1 for _ in tree.nodes()),
        }
        print(pretty_json(summary))
