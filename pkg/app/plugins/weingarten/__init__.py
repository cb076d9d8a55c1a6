"""app/plugins/weingarten/__init__.py
This module defines the WeingartenCommand class, which prints the exact Weingarten matrix of a
family at (k, N), served from the persistent cache when available.
"""
import logging

from app.calculus.reporting import Report
from app.commands import Command
from app.plugins import (add_digits_argument, add_family_arguments, add_k_argument, add_matrix_rows,
                         add_N_argument, arguments_of, require_positive)


class WeingartenCommand(Command):
    """A command printing the inverse of the Gram matrix."""
    def __init__(self):
        super().__init__()
        self.name = "weingarten"
        self.description = "Print the exact Weingarten matrix of a family at (k, N)."

    def add_arguments(self, parser):
        add_family_arguments(parser)
        add_k_argument(parser)
        add_N_argument(parser)
        add_digits_argument(parser)

    def execute(self, args, calculus):
        require_positive(args.N, 'N')
        logging.info(f"Weingarten matrix requested for {args.family} k={args.k} N={args.N}")
        matrix = calculus.weingarten(args.family, args.k, args.N)
        report = Report(self.name, arguments_of(args))
        report.add_note("exact inverse of the Gram matrix (fraction-free elimination)")
        if args.twisted:
            report.add_note("the twisted and untwisted Weingarten matrices coincide")
        add_matrix_rows(report, matrix, args.digits)
        return report
