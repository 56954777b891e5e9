# This file is part of tapestry, licensed under the BSD-3-Clause License.
# tapestry
from tapestry.oracle.convergence import ConvergenceConfig, convergence_study, write_convergence_table
from tapestry.shell.common import ArtifactWriter, load_run_config, report_warnings
from tapestry.util.cli import list_of_floats
from tapestry.util.format import pretty_json


class ConvergeClient(object):
    @classmethod
    def setup_parser(cls, subparsers):
        parser = subparsers.add_parser(
            "converge", help="Compare exhaustive runs with the analytic free evolution over a spacing sweep."
        )
        parser.add_argument(
            "--spacings", help="comma-separated lattice spacings (overrides [convergence])", type=list_of_floats
        )
        parser.set_defaults(func=cls._converge)

    @classmethod
    def _converge(cls, args):
        config = load_run_config(args)
        params = dict(config.convergence or {})
        if args.spacings:
            params["spacings"] = args.spacings
        study = ConvergenceConfig(**params)
        report = convergence_study(study)

        writer = ArtifactWriter(config)
        extra = [
            "sigma: {0!r}".format(study.sigma),
            "x0: {0!r}".format(study.x0),
            "k0: {0!r}".format(study.k0),
            "kernel: {0}".format(study.kernel),
        ]
        with writer.open("convergence.tsv", "convergence", extra) as fp:
            write_convergence_table(report, fp)

        if not report.monotone:
            report_warnings(["L2 error does not decrease at every refinement"])
        print(
            pretty_json(
                {
                    "rows": len(report.rows),
                    "order": report.order,
                    "monotone": report.monotone,
                    "errors": [row.error for row in report.rows],
                }
            )
        )
