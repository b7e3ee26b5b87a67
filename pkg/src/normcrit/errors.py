"""Exception hierarchy shared by every module.

Each class carries a stable ``code`` string; the command line front end maps
:class:`RefusedTooLarge` to exit status 3 and every other
:class:`NormcritError` to exit status 4.
"""


class NormcritError(Exception):
    code = "ERROR"


class RingMismatch(NormcritError, TypeError):
    code = "RING_MISMATCH"


class ArityMismatch(NormcritError, ValueError):
    code = "ARITY_MISMATCH"


class NotDivisible(NormcritError, ArithmeticError):
    code = "NOT_DIVISIBLE"


class DivideByZero(NormcritError, ZeroDivisionError):
    code = "DIVIDE_BY_ZERO"


class NotRationalInteger(NormcritError, ValueError):
    """A cyclotomic coefficient has a nonzero irrational part."""

    code = "NOT_RATIONAL_INTEGER"

    def __init__(self, monomial, coefficient):
        self.monomial = tuple(monomial)
        self.coefficient = coefficient
        super().__init__(f"coefficient {coefficient} of monomial {self.monomial} is not a rational integer")


class NotPrime(NormcritError, ValueError):
    code = "NOT_PRIME"


class NotDivisor(NormcritError, ValueError):
    code = "NOT_DIVISOR"


class InvalidPartition(NormcritError, ValueError):
    code = "INVALID_PARTITION"


class RefusedTooLarge(NormcritError):
    """The request is out of reach by design (Phi_6, theta_{6,6}, h_6, ...)."""

    code = "REFUSED_TOO_LARGE"


class NotSymmetric(NormcritError, ValueError):
    code = "NOT_SYMMETRIC"


class CacheCorrupt(NormcritError):
    code = "CACHE_CORRUPT"


class CharMismatch(NormcritError, ValueError):
    code = "CHAR_MISMATCH"


class NotIrreducible(NormcritError, ValueError):
    code = "NOT_IRREDUCIBLE"


class NotCoprime(NormcritError, ValueError):
    code = "NOT_COPRIME"


class BudgetExceeded(NormcritError):
    code = "BUDGET_EXCEEDED"
