"""app/plugins/law/__init__.py
This module defines the LawCommand class. It prints the even moments of the rescaled coordinate
sqrt(N) x_1 next to their large-N limits: (2l-1)!!, l! or Catalan(l) for the classical,
half-liberated and free spheres.
"""
from app.calculus.moments import asymptotic_reference
from app.calculus.reporting import Report, decimal
from app.commands import Command
from app.plugins import add_digits_argument, add_family_arguments, add_N_argument, arguments_of, require_positive


class LawCommand(Command):
    """A command tabulating N^l times the moments of x_1^{2l}."""
    def __init__(self):
        super().__init__()
        self.name = "law"
        self.description = "Moments of sqrt(N) x_1 up to order 2 lmax, with their large-N limits."

    def add_arguments(self, parser):
        add_family_arguments(parser)
        add_N_argument(parser)
        parser.add_argument('--lmax', type=int, default=3, help="largest half order l")
        add_digits_argument(parser)

    def execute(self, args, calculus):
        require_positive(args.N, 'N')
        require_positive(args.lmax, 'lmax')
        moments = calculus.law(args.family, args.twisted, args.N, args.lmax)
        report = Report(self.name, arguments_of(args))
        for l, moment in enumerate(moments, start=1):
            reference = asymptotic_reference(args.family, l)
            row = {"l": l, "moment": moment, "reference": reference, "gap": abs(moment - reference)}
            if args.digits:
                row["decimal"] = decimal(moment, args.digits)
            report.add_result(**row)
        report.add_note("moment = N^l times the integral of x_1^(2l); reference = number of pairings of 2l points")
        return report
