"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI maps codes to exit
statuses (2 parse, 3 unsupported expression, 4 numeric).
"""

from __future__ import annotations


class FracSumError(Exception):
    code = "error"
    exit_status = 4


# -- numeric ---------------------------------------------------------------

class BoundError(FracSumError, ValueError):
    """Requested index lies outside a precomputed table."""
    code = "bound"


class PoleError(FracSumError, ValueError):
    """Evaluation at a pole of a special function."""
    code = "pole"


class PoleAtBound(PoleError):
    """A reduced summation bound hits a pole of the closed form."""
    code = "pole_at_bound"


class NonSummable(FracSumError, ValueError):
    code = "non_summable"

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = tuple(offending)


class NonDecaying(FracSumError, ValueError):
    code = "non_decaying"


class MaxTermsExceeded(FracSumError, RuntimeError):
    code = "max_terms"

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


# -- catalog ---------------------------------------------------------------

class NotInCatalog(FracSumError, ValueError):
    code = "not_in_catalog"
    exit_status = 3


class NoPrimitiveInCatalog(NotInCatalog):
    code = "no_primitive"


class UnsupportedForTaylor(NotInCatalog):
    code = "unsupported_taylor"


class NonPolynomial(NotInCatalog):
    code = "non_polynomial"


class UnsupportedFunction(NotInCatalog):
    """Raised by canonicalization; ``node`` is the offending subtree."""
    code = "unsupported_function"

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


# -- parsing ---------------------------------------------------------------

class ParseError(FracSumError, ValueError):
    code = "syntax"
    exit_status = 2

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class LexError(ParseError):
    code = "lex"
