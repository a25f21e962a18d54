"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class QuadHierError(Exception):
    """Base class for every domain error raised by the package."""


# field construction / arithmetic
class NotPrime(QuadHierError, ValueError):
    pass


class EvenCharacteristic(QuadHierError, ValueError):
    pass


class Reducible(QuadHierError, ValueError):
    pass


class BadDegree(QuadHierError, ValueError):
    pass


class DivisionByZero(QuadHierError, ZeroDivisionError):
    pass


# linear algebra
class DimOutOfRange(QuadHierError, ValueError):
    pass


# quadratic forms
class NotAQuadraticForm(QuadHierError, ValueError):
    pass


class ZeroDimSubspace(QuadHierError, ValueError):
    pass


class DegenerateAmbient(QuadHierError, ValueError):
    pass


class FormParseError(QuadHierError, ValueError):
    """Malformed form spec; ``pos`` is the 0-based column of the problem."""

    def __init__(self, message: str, text: str = "", pos: int = 0) -> None:
        self.text = text
        self.pos = pos
        if text:
            message = f"{message} at column {pos}\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


# codes
class EmptyDefiningSet(QuadHierError):
    pass


class TooLarge(QuadHierError):
    pass


class DegenerateCode(QuadHierError):
    pass


# hierarchies
class AZeroOutOfScope(QuadHierError):
    pass


class RankZero(QuadHierError):
    pass


class DimensionDeficit(QuadHierError):
    pass


class BudgetExceeded(QuadHierError):
    pass
