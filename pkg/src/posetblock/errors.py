"""Exception hierarchy shared by every module."""

from __future__ import annotations


class PosetBlockError(ValueError):
    """Base class for all errors raised by this package."""


# field / linear algebra
class NotPrimePower(PosetBlockError):
    pass


class Unsupported(PosetBlockError):
    pass


class Singular(PosetBlockError):
    pass


class DimensionMismatch(PosetBlockError):
    pass


class BudgetExceeded(PosetBlockError):
    """An exhaustive enumeration would exceed its configured budget."""


# posets
class CycleDetected(PosetBlockError):
    pass


class IndexOutOfRange(PosetBlockError):
    pass


class NotAnIdeal(PosetBlockError):
    pass


# weights
class AxiomViolation(PosetBlockError):
    """A weight table fails one of the weight axioms.

    ``axiom`` is one of ``"a"``, ``"b"``, ``"c"``, ``"d"``; ``witness`` is the
    offending element or pair of elements.
    """

    def __init__(self, axiom: str, witness: tuple[int, ...], message: str):
        super().__init__(f"axiom ({axiom}) violated at {witness}: {message}")
        self.axiom = axiom
        self.witness = witness


class EmptyBlock(PosetBlockError):
    pass


# spaces and isometries
class ShapeMismatch(PosetBlockError):
    pass


class LabelMismatch(PosetBlockError):
    pass


class NotInvertible(PosetBlockError):
    pass


class NotPrime(PosetBlockError):
    pass


class NotAnAutomorphism(PosetBlockError):
    pass


class DecompositionFailed(PosetBlockError):
    pass


# codes
class RankDeficient(PosetBlockError):
    pass


# cli
class ParseError(PosetBlockError):
    """Malformed space description; ``location`` names a field or line:column."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
