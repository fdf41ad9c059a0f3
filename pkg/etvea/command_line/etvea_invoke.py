"""
etvea class for invoking experiments from the command line
"""

import argparse
import logging
import sys

from etvea import config
from etvea.analysis import analyze
from etvea.custom_exceptions import EtveaException
from etvea.design import DESIGN_NAMES, DESIGNS
from etvea.experiment import ExperimentConfig, run_experiment
from etvea.problems import get_problems

log = logging.getLogger(__name__)

CONSTANTS = [
    "BETA",
    "LINEAGE_DEPTH",
    "ADAPTATION_INTERVAL",
    "PROBABILITY_FLOOR",
    "POPULATION_SIZE",
    "DELTA",
    "MUTATION_P0",
    "WRIGHT_R",
    "LINE_ALPHA",
    "BLX_ALPHA",
    "DIFFERENTIAL_F",
    "RAISE_AMPLITUDE",
    "CREEP_AMPLITUDE",
    "RUNS",
    "GENERATIONS",
    "CHECKPOINT_INTERVAL",
]


def _name_list(valid):
    def parse(text):
        names = [name.strip() for name in text.split(",") if name.strip()]
        unknown = [name for name in names if name not in valid]
        if unknown or not names:
            raise argparse.ArgumentTypeError(
                "unknown name(s) %s; valid names: %s"
                % (", ".join(unknown) or "(none)", ", ".join(valid))
            )
        return names

    return parse


class EtveaInvoke(object):
    """
    EtveaInvoke object implements class to call from command line
    """

    @classmethod
    def mkparser(cls):
        parser = argparse.ArgumentParser(
            prog="etvea",
            description="Run and analyse adaptive EA experiments.",
        )
        parser.add_argument(
            "-v",
            "--verbose",
            action="store_true",
            default=False,
            help="Log per-generation detail.",
        )
        commands = parser.add_subparsers(dest="command", required=True)

        run = commands.add_parser("run", help="Run an experiment matrix.")
        run.add_argument(
            "--config", dest="config", help="Flat JSON experiment config."
        )
        run.add_argument("--seed", type=int, help="Base seed.")
        run.add_argument("--out", help="Output directory.")
        run.add_argument(
            "--designs",
            type=_name_list(DESIGN_NAMES),
            help="Comma separated designs, default all: %s"
            % ",".join(DESIGN_NAMES),
        )
        run.add_argument(
            "--problems",
            type=_name_list(get_problems().keys()),
            help="Comma separated problems, default all.",
        )
        run.add_argument("--runs", type=int, help="Runs per cell.")
        run.add_argument("--generations", type=int)
        run.add_argument(
            "--threads", type=int, help="Worker processes, default 1."
        )
        run.add_argument(
            "--event-log",
            dest="event_log",
            action="store_true",
            default=None,
            help="Write per-run genealogy logs.",
        )

        analyse = commands.add_parser(
            "analyze", help="Compare designs in an experiment directory."
        )
        analyse.add_argument("--in", dest="in_dir", required=True)
        analyse.add_argument("--out", dest="out_dir", default=None)
        analyse.add_argument(
            "--plot",
            action="store_true",
            default=False,
            help="Also render boxplot figures.",
        )

        commands.add_parser("list", help="List designs, problems, constants.")
        return parser

    @classmethod
    def main(cls, argv=None):
        parser = cls.mkparser()
        options = parser.parse_args(argv)
        if options.verbose:
            logging.getLogger("").setLevel(logging.DEBUG)
        invoker = cls(options)
        try:
            invoker()
        except EtveaException as err:
            sys.stderr.write("etvea: error: %s\n" % err)
            return 1
        return 0

    def __init__(self, options, out=None):
        self.options = options
        self.out = out or sys.stdout

    def __call__(self):
        getattr(self, "do_%s" % self.options.command)()

    def experiment_config(self):
        options = self.options
        if options.config:
            cfg = ExperimentConfig.from_file(options.config)
        else:
            cfg = ExperimentConfig()
        return cfg.with_overrides(
            seed=options.seed,
            out=options.out,
            designs=options.designs,
            problems=options.problems,
            runs=options.runs,
            generations=options.generations,
            threads=options.threads,
            event_log=options.event_log,
        )

    def do_run(self):
        outcome = run_experiment(self.experiment_config())
        self.out.write(
            "%d runs written to %s\n" % (len(outcome.records), outcome.out)
        )
        if outcome.failures:
            self.out.write(
                "%d runs failed, see failed_cells.csv\n"
                % len(outcome.failures)
            )

    def do_analyze(self):
        tables = analyze(
            self.options.in_dir, self.options.out_dir, self.options.plot
        )
        self.out.write("wrote %s\n" % ", ".join(sorted(tables)))

    def do_list(self):
        self.out.write("Designs:\n")
        for design in DESIGNS:
            self.out.write("  %s\n" % design)
        self.out.write("Problems:\n")
        for spec in get_problems():
            self.out.write("  %s %s\n" % (spec, spec.bounds))
        self.out.write("Constants:\n")
        for name in CONSTANTS:
            self.out.write("  %s = %s\n" % (name, getattr(config, name)))


def main():
    logging.basicConfig()
    logging.getLogger("").setLevel(logging.INFO)
    sys.exit(EtveaInvoke.main())
