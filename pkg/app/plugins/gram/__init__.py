"""app/plugins/gram/__init__.py
This module defines the GramCommand class. It prints the Gram matrix N^{|pi v sigma|} of a family.
With --twisted the matrix is rebuilt from the inner products of the twisted fixed vectors, which
gives the same entries.
"""
import logging

from app.calculus import linalg
from app.calculus.linmaps import gram_of_fixed_vectors
from app.calculus.reporting import Report
from app.calculus.weingarten import RationalMatrix
from app.commands import Command
from app.plugins import (add_digits_argument, add_family_arguments, add_k_argument, add_matrix_rows,
                         add_N_argument, arguments_of, require_positive)


class GramCommand(Command):
    """A command printing the Gram matrix of the fixed vectors of a family."""
    def __init__(self):
        super().__init__()
        self.name = "gram"
        self.description = "Print the Gram matrix of a family at (k, N)."

    def add_arguments(self, parser):
        add_family_arguments(parser)
        add_k_argument(parser)
        add_N_argument(parser)
        add_digits_argument(parser)

    def execute(self, args, calculus):
        require_positive(args.N, 'N')
        gram = calculus.gram(args.family, args.k, args.N)
        report = Report(self.name, arguments_of(args))
        if args.twisted:
            logging.info(f"Building the Gram matrix from twisted fixed vectors at N={args.N}")
            entries = gram_of_fixed_vectors(args.family, args.k, args.N, twisted=True)
            gram = RationalMatrix(linalg.fraction_matrix(entries.tolist()), gram.basis)
            report.add_note("inner products of the twisted fixed vectors")
        else:
            report.add_note("entries N^(number of blocks of the join)")
        add_matrix_rows(report, gram, args.digits)
        return report
