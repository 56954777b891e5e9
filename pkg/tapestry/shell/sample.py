# This file is part of tapestry, licensed under the BSD-3-Clause License.
# stdlib
from collections import Counter

# tapestry
from tapestry.algebra.expr import simplify
from tapestry.engine.tree import sample_plays
from tapestry.measurement.stats import detection_probability
from tapestry.shell.common import ArtifactWriter, dump_plays, load_run_config
from tapestry.util.format import pretty_json, write_table


class SampleClient(object):
    @classmethod
    def setup_parser(cls, subparsers):
        parser = subparsers.add_parser("sample", help="Draw independent plays of one round.")
        parser.add_argument("--count", help="override the number of plays", type=int, default=None)
        parser.set_defaults(func=cls._sample)

    @classmethod
    def _sample(cls, args):
        config = load_run_config(args)
        count = args.count if args.count is not None else config.count
        plays = sample_plays(simplify(config.process), config.initial_tapestry(), config.generation_config(), count)

        writer = ArtifactWriter(config)
        with writer.open("plays.jsonl", "play-log", ["plays: {0}".format(count)]) as fp:
            dump_plays(plays, fp)

        regions = config.region_list()
        if regions:
            # Mean over plays of the per-play detection probability
            with writer.open("probabilities.tsv", "probabilities", ["plays: {0}".format(count)]) as fp:
                rows = []
                for region in regions:
                    total = sum(detection_probability(play.tapestry, region) for play in plays)
                    rows.append((region.name, total / count))
                write_table(fp, ("region", "probability"), rows)

        generators = Counter(event.generator for play in plays for event in play.events)
        print(pretty_json({"plays": count, "seed": config.seed, "generators": dict(generators)}))
