"""Exception hierarchy shared by all enumcomb modules."""


class EnumCombError(Exception):
    """Base class for every error raised by enumcomb."""


class BadSpec(EnumCombError, ValueError):
    """A named-object builder got an unknown family or bad parameters."""


class WindowTooShort(EnumCombError, ValueError):
    pass


# powser
class NotInvertible(EnumCombError, ZeroDivisionError):
    pass


class CompositionDiverges(EnumCombError, ValueError):
    pass


class BadConstantTerm(EnumCombError, ValueError):
    pass


class NotCompositionallyInvertible(EnumCombError, ValueError):
    pass


# cfinite
class ImproperRational(EnumCombError, ValueError):
    pass


class NoDominantRealRoot(EnumCombError, ValueError):
    pass


# graphcount
class KindMismatch(EnumCombError, ValueError):
    pass


class UnknownVertex(EnumCombError, KeyError):
    pass


class Disconnected(EnumCombError, ValueError):
    pass


class LoopPresent(EnumCombError, ValueError):
    pass


class NotEulerian(EnumCombError, ValueError):
    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


# detcount
class NotSkewSymmetric(EnumCombError, ValueError):
    pass


class OddDimension(EnumCombError, ValueError):
    pass


class CyclicGraph(EnumCombError, ValueError):
    pass


# posetkit
class CycleDetected(EnumCombError, ValueError):
    pass


class TooLarge(EnumCombError, ValueError):
    pass


class NotGraded(EnumCombError, ValueError):
    pass


class NotEulerianPoset(EnumCombError, ValueError):
    pass


# arrkit
class NotPrime(EnumCombError, ValueError):
    pass


class PrimeInstability(EnumCombError, ArithmeticError):
    pass


class NotCentral(EnumCombError, ValueError):
    pass


# matroidkit
class AxiomViolation(EnumCombError, ValueError):
    pass


class BadSubset(EnumCombError, ValueError):
    pass


# ehrhartkit
class Unbounded(EnumCombError, ValueError):
    pass


class ScanTooLarge(EnumCombError, RuntimeError):
    pass


class NonIntegralHStar(EnumCombError, ArithmeticError):
    pass


class NotTwoDimensional(EnumCombError, ValueError):
    pass
