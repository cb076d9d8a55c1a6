"""app/plugins/sphere_moment/__init__.py
This module defines the SphereMomentCommand class for integrals of x_{i1}...x_{ik} over the
classical, half-liberated and free spheres and their twisted versions.
"""
from app.calculus.reporting import Report, decimal
from app.commands import Command
from app.plugins import (add_digits_argument, add_family_arguments, add_N_argument, arguments_of,
                         parse_indices, require_positive)


class SphereMomentCommand(Command):
    """A command integrating a monomial over a sphere, with x_i = u_{1i}."""
    def __init__(self):
        super().__init__()
        self.name = "sphere-moment"
        self.description = "Integral of x_{i1}...x_{ik} over a (twisted) sphere."

    def add_arguments(self, parser):
        add_family_arguments(parser, flag='--sphere')
        add_N_argument(parser)
        parser.add_argument('--indices', required=True, help="coordinate indices, e.g. 1,1,2,2")
        add_digits_argument(parser)

    def execute(self, args, calculus):
        require_positive(args.N, 'N')
        indices = parse_indices(args.indices)
        value = calculus.moment(args.family, args.twisted, args.N, indices)
        report = Report(self.name, arguments_of(args))
        row = {"indices": list(indices), "value": value}
        if args.digits:
            row["decimal"] = decimal(value, args.digits)
        report.add_result(**row)
        report.add_note("sphere Weingarten formula: delta symbols times Weingarten column sums")
        return report
