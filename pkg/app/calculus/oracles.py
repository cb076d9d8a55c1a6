"""app/calculus/oracles.py
Closed-form and numeric references for sphere integrals, independent of the Weingarten route.

Double factorials follow the convention m!! = (m-1)(m-3)(m-5)... over positive factors, with
the empty product equal to 1, so that 6!! = 15 and 1!! = 1. With it, the integral of
x_1^{l_1}...x_N^{l_N} over the real sphere is (N-1)!! l_1!!...l_N!! / (N + sum l - 1)!! when all
l_a are even, and 0 otherwise.
"""
import itertools
import math
from collections import Counter
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import mpmath

from app.calculus import config
from app.calculus.exceptions import ValidationError
from app.calculus.partitions import PairingFamily

FREE_TOLERANCE = mpmath.mpf("1e-9")
Q_TOLERANCE = mpmath.mpf("1e-30")
# extra digits beyond the requested precision when solving for q
GUARD_DIGITS = 15


def double_factorial(m: int) -> int:
    """(m-1)(m-3)(m-5)... over the positive factors; 1 when there are none."""
    result = 1
    factor = m - 1
    while factor > 0:
        result *= factor
        factor -= 2
    return result


def catalan(l: int) -> int:
    return math.comb(2 * l, l) // (l + 1)


def reference_counts(family, l: int) -> int:
    """Number of pairings of 2l points in the family: (2l-1)(2l-3)...1, l! or Catalan(l)."""
    family = PairingFamily.parse(family)
    if l < 0:
        raise ValidationError(f"l must be nonnegative, got {l}")
    if family is PairingFamily.CLASSICAL:
        return double_factorial(2 * l)
    if family is PairingFamily.HALF:
        return math.factorial(l)
    return catalan(l)


def exponent_profile(indices: Sequence[int]) -> Tuple[int, ...]:
    """Occurrence counts l_1..l_m of each coordinate up to the largest index used."""
    counts = Counter(indices)
    top = max(counts) if counts else 0
    return tuple(counts.get(a, 0) for a in range(1, top + 1))


def half_liberated_profile(indices: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """
    Common occurrence counts of a balanced monomial: each index must appear as often at odd
    positions as at even positions. Returns None for monomials that are not balanced.
    """
    odd = Counter(indices[0::2])
    even = Counter(indices[1::2])
    if odd != even:
        return None
    top = max(odd) if odd else 0
    return tuple(odd.get(a, 0) for a in range(1, top + 1))


def _check_profile(profile: Sequence[int], N: int) -> Tuple[int, ...]:
    profile = tuple(int(value) for value in profile)
    if N < 1:
        raise ValidationError(f"N must be a positive integer, got {N}")
    if any(value < 0 for value in profile):
        raise ValidationError(f"profile entries must be nonnegative, got {profile}")
    if len(profile) > N and any(profile[N:]):
        raise ValidationError(f"profile {profile} uses more than N = {N} coordinates")
    return profile


def classical_sphere_integral(profile: Sequence[int], N: int) -> Fraction:
    """Integral of x_1^{l_1}...x_N^{l_N} over the unit sphere of R^N, exactly."""
    profile = _check_profile(profile, N)
    if any(value % 2 for value in profile):
        return Fraction(0)
    numerator = double_factorial(N - 1)
    for value in profile:
        numerator *= double_factorial(value)
    return Fraction(numerator, double_factorial(N + sum(profile) - 1))


def half_liberated_integral_sum(profile: Sequence[int], N: int) -> Fraction:
    """
    Half-liberated integral of a balanced monomial with common occurrence counts l_a, as the
    binomial expansion of |z_1|^{2l_1}...|z_N|^{2l_N} over the real sphere in dimension 2N.
    """
    profile = _check_profile(profile, N)
    total = Fraction(0)
    for choice in itertools.product(*(range(value + 1) for value in profile)):
        weight = 1
        exponents = []
        for value, r in zip(profile, choice):
            weight *= math.comb(value, r)
            exponents += [2 * value - 2 * r, 2 * r]
        total += weight * classical_sphere_integral(exponents, 2 * N)
    return total


def half_liberated_integral_stated(profile: Sequence[int], N: int) -> Fraction:
    """Literal evaluation of 4^{sum l} (2N-1)! l_1!...l_N! / (2N + sum l - 1)!; reference only."""
    profile = _check_profile(profile, N)
    degree = sum(profile)
    numerator = 4 ** degree * math.factorial(2 * N - 1)
    for value in profile:
        numerator *= math.factorial(value)
    return Fraction(numerator, math.factorial(2 * N + degree - 1))


class QParameter:
    """The root q in [-1, 0) of q + 1/q = -N, computed at a given working precision."""

    def __init__(self, N: int, digits: Optional[int] = None):
        if N < 3:
            raise ValidationError(f"the free q-formula needs N >= 3, got {N}")
        self.N = N
        self.digits = digits or config.default_digits()
        with mpmath.workdps(self.digits + GUARD_DIGITS):
            self.q = (-N + mpmath.sqrt(N * N - 4)) / 2
            residual = abs(self.q + 1 / self.q + N)
        if residual > Q_TOLERANCE:
            raise ArithmeticError(f"q + 1/q = -{N} holds only to {residual}; raise the precision")

    def __repr__(self) -> str:
        return f"QParameter(N={self.N}, q={mpmath.nstr(self.q, 15)})"


def free_moment(l: int, N: int, digits: Optional[int] = None) -> mpmath.mpf:
    """
    Moment of order 2l of a free sphere coordinate from the q-deformed sum. The sum gives the
    moments of sqrt(N+2) x_1 and is divided by (N+2)^l.
    """
    if l < 1:
        raise ValidationError(f"l must be a positive integer, got {l}")
    parameter = QParameter(N, digits)
    q = parameter.q
    with mpmath.workdps(parameter.digits):
        total = mpmath.mpf(0)
        for r in range(-l - 1, l + 2):
            if r == 0:
                continue
            sign = -1 if r % 2 else 1
            total += sign * mpmath.binomial(2 * l + 2, l + r + 1) * r / (1 + q ** r)
        value = total * (q + 1) / (q - 1) / (l + 1) / mpmath.mpf(N + 2) ** l
    return value


def circle_base_formula(p: int, q: int) -> mpmath.mpf:
    """(pi/2)^{e(p)e(q)} p!! q!! / (p+q+1)!!, with e(n) = 1 for even n and 0 for odd n."""
    exponent = int(p % 2 == 0 and q % 2 == 0)
    ratio = mpmath.mpf(double_factorial(p) * double_factorial(q)) / double_factorial(p + q + 1)
    return (mpmath.pi / 2) ** exponent * ratio


def circle_quadrature(p: int, q: int, digits: int = 30) -> mpmath.mpf:
    """Adaptive quadrature of cos^p t sin^q t over [0, pi/2]."""
    with mpmath.workdps(digits):
        value = mpmath.quad(lambda t: mpmath.cos(t) ** p * mpmath.sin(t) ** q, [0, mpmath.pi / 2])
    return value


def circle_sphere_integral_numeric(p: int, q: int, digits: int = 30) -> mpmath.mpf:
    """Numeric integral of x_1^p x_2^q over the unit circle with normalized measure (even p, q)."""
    if p % 2 or q % 2:
        return mpmath.mpf(0)
    with mpmath.workdps(digits):
        value = 2 / mpmath.pi * circle_quadrature(p, q, digits)
    return value


def discrepancy_table(profiles: Sequence[Sequence[int]], dimensions: Sequence[int]) -> Dict:
    """Stated closed form against the binomial sum for each (profile, N); keys are (profile, N)."""
    table = {}
    for profile in profiles:
        for N in dimensions:
            if len(profile) > N:
                continue
            stated = half_liberated_integral_stated(profile, N)
            summed = half_liberated_integral_sum(profile, N)
            table[(tuple(profile), N)] = {"stated": stated, "sum": summed, "agree": stated == summed}
    return table
