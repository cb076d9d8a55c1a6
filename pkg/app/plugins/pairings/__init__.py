"""app/plugins/pairings/__init__.py
This module defines the PairingsCommand class, which lists the pairings of k points in a family in
canonical order together with their crossing counts and signatures.
"""
import logging

from app.calculus.partitions import crossing_count, signature
from app.calculus.reporting import Report
from app.commands import Command
from app.plugins import add_family_arguments, add_k_argument, arguments_of


class PairingsCommand(Command):
    """A command enumerating the one-row pairings of a family."""
    def __init__(self):
        super().__init__()
        self.name = "pairings"
        self.description = "List the pairings of k points in a family, in canonical order."

    def add_arguments(self, parser):
        add_family_arguments(parser, twisted=False)
        add_k_argument(parser)

    def execute(self, args, calculus):
        logging.info(f"Enumerating {args.family} pairings of {args.k} points")
        report = Report(self.name, arguments_of(args))
        for index, pi in enumerate(calculus.pairings(args.family, args.k)):
            report.add_result(index=index, pairing=pi, crossings=crossing_count(pi), signature=signature(pi))
        report.add_note(f"{len(report.results)} pairings, ordered by partner array")
        return report
