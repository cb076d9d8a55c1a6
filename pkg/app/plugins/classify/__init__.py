"""app/plugins/classify/__init__.py
This module defines the ClassifyCommand class. The generators are permutations whose relations
x_{i1}...x_{ik} = x_{i sigma(1)}...x_{i sigma(k)} cut out a sphere; the command saturates them into a
filtered group up to --kmax and names the sphere they define.
"""
import logging

from app.calculus import config
from app.calculus.reporting import Report
from app.commands import Command
from app.plugins import arguments_of, parse_generators


class ClassifyCommand(Command):
    """A command saturating permutation relations and classifying the resulting sphere."""
    def __init__(self):
        super().__init__()
        self.name = "classify"
        self.description = "Saturate permutation relations and name the sphere they define."

    def add_arguments(self, parser):
        parser.add_argument('--generators', default='',
                            help='permutations separated by ";", e.g. "3:(3,2,1);5:(2,1,3,4,5)"')
        parser.add_argument('--kmax', type=int, default=config.DEFAULT_MAX_KMAX, help="truncation horizon")
        parser.add_argument('--twisted', action='store_true', help="read the relations as twisted ones")

    def execute(self, args, calculus):
        generators = parse_generators(args.generators)
        outcome = calculus.classify(generators, args.kmax, args.twisted)
        report = Report(self.name, arguments_of(args))
        for k, order in outcome["orders"].items():
            report.add_result(k=int(k), order=order)
        report.add_result(label=outcome["label"], sphere=outcome["sphere"],
                          rule_counts=outcome["rule_counts"], sweeps=outcome["sweeps"])
        if outcome["label"] == "unknown":
            logging.warning(f"Generators {args.generators!r} do not classify within k_max={args.kmax}")
            report.add_note("the truncated group matches none of trivial, star or full")
        report.add_note("orders are |G(k)| for the saturated truncation; the last row names the sphere")
        return report
