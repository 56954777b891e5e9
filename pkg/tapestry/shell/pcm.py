# This file is part of tapestry, licensed under the BSD-3-Clause License.
# stdlib
import json
import logging

# tapestry
from tapestry.algebra.expr import simplify
from tapestry.engine.tree import SequenceTree, enumerate_plays, sample_plays
from tapestry.interpretation.configuration import configuration_extend, factorization_check, pcm_c
from tapestry.interpretation.pcm import pcm, pcm_coproduct
from tapestry.shell.common import ArtifactWriter, load_run_config
from tapestry.util.format import pretty_json

log = logging.getLogger("tapestry.shell")


def _strength_entries(interpretation):
    return [[list(site), s.real, s.imag] for site, s in sorted(interpretation.site_strengths().items())]


class PcmClient(object):
    @classmethod
    def setup_parser(cls, subparsers):
        parser = subparsers.add_parser("pcm", help="Export the process covering map of one round.")
        parser.add_argument(
            "--configuration",
            help="also export the configuration-space map of the extended tree (top-level products)",
            action="store_true",
        )
        parser.add_argument(
            "--coproduct", help="also export the ordered per-factor components of each element", action="store_true"
        )
        parser.add_argument(
            "--sampled",
            help="build the sequence tree from the configured count of sampled plays instead of enumerating it",
            action="store_true",
        )
        parser.add_argument("--budget", help="override the enumeration budget", type=int, default=None)
        parser.set_defaults(func=cls._pcm)

    @classmethod
    def _pcm(cls, args):
        config = load_run_config(args)
        cfg = config.generation_config()
        expr = simplify(config.process)
        initial = config.initial_tapestry()
        if args.budget is not None:
            cfg = cfg.replace(budget=args.budget)
        if args.sampled:
            tree = SequenceTree.from_plays(expr, initial, sample_plays(expr, initial, cfg, config.count))
        else:
            tree = enumerate_plays(expr, initial, cfg)
        lattice = config.lattice
        result = pcm(tree, lattice)

        writer = ArtifactWriter(config)
        summary = {"provenance": tree.provenance, "plays": len(tree.plays), "elements": len(result)}
        with writer.open("pcm.jsonl", "pcm", ["provenance: {0}".format(tree.provenance)]) as fp:
            for index, interpretation in enumerate(result):
                fp.write(json.dumps({"element": index, "strengths": _strength_entries(interpretation)}))
                fp.write("\n")

        if args.coproduct:
            with writer.open("pcm-coproduct.jsonl", "pcm-coproduct") as fp:
                for index, components in enumerate(pcm_coproduct(tree, lattice)):
                    record = {"element": index, "components": [_strength_entries(c) for c in components]}
                    fp.write(json.dumps(record))
                    fp.write("\n")

        if args.configuration:
            extended = configuration_extend(tree)
            interpretations = pcm_c(extended, tree.factor_count, lattice)
            with writer.open("pcm-c.jsonl", "pcm-c", ["factors: {0}".format(tree.factor_count)]) as fp:
                for index, ci in enumerate(interpretations):
                    check = factorization_check(ci)
                    record = {
                        "element": index,
                        "terms": [
                            [[list(site), s.real, s.imag, dict(props)] for site, s, props in term] for term in ci.terms
                        ],
                        "factorizes": check.factorizes,
                        "residual": check.residual,
                    }
                    fp.write(json.dumps(record))
                    fp.write("\n")
            summary["configuration_elements"] = len(interpretations)
            summary["extension_passes"] = extended.iterations

        print(pretty_json(summary))
