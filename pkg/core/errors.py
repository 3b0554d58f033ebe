"""Exception hierarchy shared by the models and processors."""


class SuperAlgebraError(ValueError):
    """Base class for contract violations in the algebra layer"""


class ContextMismatchError(SuperAlgebraError):
    pass


class ParityError(SuperAlgebraError):
    pass


class UnknownVariableError(SuperAlgebraError):
    pass


class DegreeRangeError(SuperAlgebraError):
    pass


class NotInvariantError(SuperAlgebraError):
    pass


class DivisorShapeError(SuperAlgebraError):
    """Raised when a polynomial is not of the monic a_i + theta*b_i shape"""


class ParseError(SuperAlgebraError):
    pass


class NotFoundError(SuperAlgebraError):
    """A search came back empty within the requested truncation"""
