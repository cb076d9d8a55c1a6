"""app/plugins/moment/__init__.py
This module defines the MomentCommand class for Haar integrals of u_{i1 j1}...u_{ik jk} over the
(twisted) quantum group of a family.
"""
from app.calculus.exceptions import ValidationError
from app.calculus.reporting import Report, decimal
from app.commands import Command
from app.plugins import (add_digits_argument, add_family_arguments, add_k_argument, add_N_argument,
                         arguments_of, parse_indices, require_positive)


class MomentCommand(Command):
    """A command evaluating one Haar integral through the Weingarten formula."""
    def __init__(self):
        super().__init__()
        self.name = "moment"
        self.description = "Haar integral of u_{i1 j1}...u_{ik jk} over the quantum group of a family."

    def add_arguments(self, parser):
        add_family_arguments(parser)
        add_k_argument(parser, required=False)
        add_N_argument(parser)
        parser.add_argument('--i', dest='i', required=True,
                            help="row indices i1,...,ik; --i 1,1 --j 2,2 integrates u_12 u_12")
        parser.add_argument('--j', dest='j', required=True,
                            help="column indices j1,...,jk; the t-th factor is u_{it jt}")
        add_digits_argument(parser)

    def execute(self, args, calculus):
        require_positive(args.N, 'N')
        i_tuple = parse_indices(args.i, 'i')
        j_tuple = parse_indices(args.j, 'j')
        if args.k is not None and args.k != len(i_tuple):
            raise ValidationError(f"--k = {args.k} does not match the {len(i_tuple)} indices given")
        value = calculus.moment(args.family, args.twisted, args.N, i_tuple, j_tuple)
        report = Report(self.name, arguments_of(args))
        row = {"i": list(i_tuple), "j": list(j_tuple), "value": value}
        if args.digits:
            row["decimal"] = decimal(value, args.digits)
        report.add_result(**row)
        report.add_note("sum over pairs of pairings of delta symbols times Weingarten entries")
        return report
