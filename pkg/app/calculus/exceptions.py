"""app/calculus/exceptions.py
Error types raised by the calculus package. Validation problems derive from ValueError and
arithmetic breakdowns (singular Gram matrices) from ArithmeticError, so callers that only know
the builtin hierarchy still catch them.
"""


class CalculusError(Exception):
    """Root of every error raised by the calculus package."""


class ValidationError(CalculusError, ValueError):
    """Raised when an argument has the wrong shape, range or type."""


class BoundExceededError(ValidationError):
    """Raised when a request is larger than a configured size bound."""

    def __init__(self, what: str, value: int, bound: int):
        super().__init__(f"{what} = {value} exceeds the configured bound {bound}")
        self.what = what
        self.value = value
        self.bound = bound


class SingularMatrixError(CalculusError, ArithmeticError):
    """Raised by the exact linear algebra when a square matrix has no inverse."""

    def __init__(self, order: int, rank: int):
        super().__init__(f"matrix of order {order} is singular (rank {rank})")
        self.order = order
        self.rank = rank


class GramSingular(SingularMatrixError):
    """
    Raised when the Gram matrix of a pairing family is not invertible at (k, N).

    The fixed vectors are then linearly dependent and the Weingarten formula does not apply
    as stated. The exact rank is carried for the error report.
    """

    def __init__(self, family, k: int, N: int, rank: int, order: int):
        CalculusError.__init__(
            self,
            f"Gram matrix for family={family} k={k} N={N} is singular: rank {rank} < order {order}")
        self.family = family
        self.k = k
        self.N = N
        self.rank = rank
        self.order = order
