"""app/plugins/__init__.py: Utility functions shared by the command plugins.
This module declares the flags several commands have in common and parses their text values
(index tuples, exponent profiles, permutation generators) into validated Python values, so that
every command rejects bad input before any computation starts.
"""
import logging
from typing import List, Tuple

from app.calculus.exceptions import ValidationError
from app.calculus.monomial import Permutation
from app.calculus.partitions import PairingFamily
from app.calculus.reporting import decimal

FAMILIES = [family.value for family in PairingFamily]


def add_family_arguments(parser, flag: str = '--family', twisted: bool = True):
    parser.add_argument(flag, dest='family', choices=FAMILIES, default=PairingFamily.CLASSICAL.value,
                        help="pairing family: classical, half (half-liberated) or free")
    if twisted:
        parser.add_argument('--twisted', action='store_true', help="use the twisted (signed) version")


def add_k_argument(parser, required: bool = True):
    parser.add_argument('--k', type=int, required=required, help="number of points")


def add_N_argument(parser, required: bool = True):
    parser.add_argument('--N', type=int, required=required, help="dimension N")


def add_digits_argument(parser):
    parser.add_argument('--digits', type=int, default=None,
                        help="also print decimals with this many significant digits")


def parse_indices(text: str, name: str = 'indices') -> Tuple[int, ...]:
    """
    Parses a comma separated list of positive integers, e.g. "1,1,2".

    Raises:
    ValidationError: If an entry is not a positive integer.
    """
    if text is None:
        raise ValidationError(f"--{name} is required")
    parts = [part.strip() for part in text.split(',') if part.strip()]
    try:
        values = tuple(int(part) for part in parts)
    except ValueError:
        raise ValidationError(f"--{name} must be a comma separated list of integers, got '{text}'") from None
    if any(value < 1 for value in values):
        raise ValidationError(f"--{name} entries must be positive, got '{text}'")
    return values


def parse_profile(text: str) -> Tuple[int, ...]:
    """Parses an exponent profile such as "2,2,0"; zeros are allowed."""
    parts = [part.strip() for part in text.split(',') if part.strip()]
    try:
        values = tuple(int(part) for part in parts)
    except ValueError:
        raise ValidationError(f"--profile must be a comma separated list of integers, got '{text}'") from None
    if not values or any(value < 0 for value in values):
        raise ValidationError(f"--profile entries must be nonnegative, got '{text}'")
    return values


def parse_generators(text: str) -> List[Permutation]:
    """Parses generators written as "3:(3,2,1);5:(2,1,3,4,5)"; an empty string means none."""
    generators = [Permutation.parse(part) for part in (text or '').split(';') if part.strip()]
    logging.info(f"Parsed {len(generators)} generators: {', '.join(str(sigma) for sigma in generators)}")
    return generators


def require_positive(value: int, name: str) -> int:
    if value is None or value < 1:
        raise ValidationError(f"--{name} must be a positive integer, got {value}")
    return value


def arguments_of(args) -> dict:
    """The parsed flags echoed into a report, without the output-only ones."""
    return {key: value for key, value in sorted(vars(args).items())
            if key not in ('format', 'cache_dir', 'command') and value is not None}


def add_matrix_rows(report, matrix, digits=None):
    """One result row per entry of a RationalMatrix, in row-major canonical order."""
    for r, pi in enumerate(matrix.basis):
        for c, sigma in enumerate(matrix.basis):
            row = {"row": r, "col": c, "pi": pi, "sigma": sigma, "value": matrix[r, c]}
            if digits:
                row["decimal"] = decimal(matrix[r, c], digits)
            report.add_result(**row)
