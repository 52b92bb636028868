# certquad/errors.py
"""Exception hierarchy shared by every certquad component."""


class CertQuadError(Exception):
    """Root of all certquad errors."""


class PreconditionViolated(CertQuadError, ValueError):
    """A method's smallness or admissibility condition does not hold."""


class MismatchedFamily(CertQuadError, ValueError):
    """The method's map family does not match the problem's interval family."""


class NonFiniteTerm(CertQuadError, ArithmeticError):
    """A quadrature term is NaN/inf for a reason other than sanctioned underflow."""

    def __init__(self, k: int, x: float, value: float):
        self.k = k
        self.x = x
        self.value = value
        super().__init__(f"Non-finite term {value!r} at k={k} (x={x!r})")


class UnknownExample(CertQuadError, KeyError):
    """No built-in example with the requested id."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown example"


class ExprSyntaxError(CertQuadError, ValueError):
    """Expression text could not be parsed."""

    def __init__(self, offset: int, expected: str, source: str = ""):
        self.offset = offset
        self.expected = expected
        self.source = source
        super().__init__(f"Syntax error at offset {offset}: expected {expected}")


class DomainError(CertQuadError, ValueError):
    """log/sqrt of a negative number while evaluating an expression."""


class RejectedProfile(CertQuadError, ValueError):
    """The profile does not satisfy the assumption a requested bound is built on."""


class UsageError(CertQuadError, ValueError):
    """Invalid command-line input."""
