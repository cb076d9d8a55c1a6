"""app/plugins/oracle/__init__.py
This module defines the OracleCommand class, which evaluates the references that do not go
through a Weingarten matrix: the closed form on the real sphere (plus circle quadrature when N = 2),
the binomial sum for the half-liberated sphere together with the stated closed form it disagrees
with, and the q-deformed sum for the free sphere.
"""
import logging

from app.calculus import config, oracles
from app.calculus.exceptions import ValidationError
from app.calculus.partitions import PairingFamily
from app.calculus.reporting import Report, decimal, real
from app.commands import Command
from app.plugins import FAMILIES, add_N_argument, arguments_of, parse_profile, require_positive

QUADRATURE_DIGITS = 30


class OracleCommand(Command):
    """A command evaluating the independent references for sphere integrals."""
    def __init__(self):
        super().__init__()
        self.name = "oracle"
        self.description = "Closed-form and numeric references for sphere integrals."

    def add_arguments(self, parser):
        parser.add_argument('family', nargs='?', choices=FAMILIES, default=None, metavar='FAMILY',
                            help="sphere: classical, half (half-liberated) or free")
        parser.add_argument('--family', dest='family_flag', choices=FAMILIES, default=None,
                            help="same as FAMILY")
        add_N_argument(parser)
        parser.add_argument('--profile', default=None,
                            help="exponents l_1,...,l_m (occurrences at odd positions for the half-liberated sphere)")
        parser.add_argument('--l', type=int, default=None, help="half order l for the free q-formula")
        parser.add_argument('--digits', type=int, default=None, help="working precision in digits")

    def execute(self, args, calculus):
        require_positive(args.N, 'N')
        family = self.resolve_family(args)
        report = Report(self.name, arguments_of(args))
        if family is PairingFamily.FREE:
            self._free(args, calculus, report)
        elif args.profile is None:
            raise ValidationError("--profile is required for the classical and half-liberated oracles")
        elif family is PairingFamily.CLASSICAL:
            self._classical(parse_profile(args.profile), args, calculus, report)
        else:
            self._half(parse_profile(args.profile), args, calculus, report)
        return report

    @staticmethod
    def resolve_family(args) -> PairingFamily:
        """The family from FAMILY or --family; classical when neither is given."""
        positional, flag = args.family, getattr(args, 'family_flag', None)
        if positional and flag and positional != flag:
            raise ValidationError(f"conflicting families '{positional}' and --family '{flag}'")
        family = PairingFamily.parse(positional or flag or PairingFamily.CLASSICAL.value)
        args.family, args.family_flag = family.value, None
        return family

    def _classical(self, profile, args, calculus, report):
        value = calculus.classical_oracle(profile, args.N)
        row = {"oracle": "closed_form", "profile": list(profile), "value": value}
        if args.digits:
            row["decimal"] = decimal(value, args.digits)
        report.add_result(**row)
        report.add_note("(N-1)!! l_1!!...l_N!! / (N + sum l - 1)!! with m!! = (m-1)(m-3)...")
        if args.N == 2 and len(profile) <= 2:
            p, q = (tuple(profile) + (0, 0))[:2]
            numeric = oracles.circle_sphere_integral_numeric(p, q, args.digits or QUADRATURE_DIGITS)
            report.add_result(oracle="circle_quadrature", profile=list(profile),
                              value=real(numeric, args.digits or 15))
            logging.info(f"Circle quadrature for ({p}, {q}) = {numeric}")

    def _half(self, profile, args, calculus, report):
        summed = calculus.half_liberated_oracle(profile, args.N)
        stated = oracles.half_liberated_integral_stated(profile, args.N)
        rows = [{"oracle": "binomial_sum", "profile": list(profile), "value": summed},
                {"oracle": "stated_closed_form", "profile": list(profile), "value": stated,
                 "expected_mismatch": stated != summed}]
        for row in rows:
            if args.digits:
                row["decimal"] = decimal(row["value"], args.digits)
            report.add_result(**row)
        report.add_note("binomial expansion over the real sphere of dimension 2N is the reference; "
                        "the stated closed form is shown for comparison only")

    def _free(self, args, calculus, report):
        if args.l is None:
            raise ValidationError("--l is required for the free oracle")
        require_positive(args.l, 'l')
        digits = args.digits or config.default_digits()
        value = calculus.free_oracle(args.l, args.N, digits)
        report.add_result(oracle="q_formula", l=args.l, value=real(value, digits))
        report.add_note("q-deformed sum with q + 1/q = -N")
