"""Exception hierarchy shared by all modules."""


class ReidemeisterError(Exception):
    """Base class for every error raised by this package."""


# group construction / structure
class NotAGroup(ReidemeisterError, ValueError):
    pass


class OrderCapExceeded(ReidemeisterError):
    def __init__(self, cap):
        super().__init__(f"group order exceeds cap of {cap}")
        self.cap = cap


class UnknownFamily(ReidemeisterError, KeyError):
    pass


class ParamOutOfRange(ReidemeisterError, ValueError):
    pass


class NotSubgroup(ReidemeisterError, ValueError):
    pass


class NotCentral(ReidemeisterError, ValueError):
    pass


# morphisms
class NotHomomorphism(ReidemeisterError, ValueError):
    def __init__(self, a, b, msg=None):
        super().__init__(msg or f"homomorphism property fails for pair ({a}, {b})")
        self.pair = (a, b)


class NotGeneratingSet(ReidemeisterError, ValueError):
    pass


class GroupMismatch(ReidemeisterError, ValueError):
    pass


class NotInvariant(ReidemeisterError, ValueError):
    pass


class NotAutomorphism(ReidemeisterError, ValueError):
    pass


class NotClassPreserving(ReidemeisterError, ValueError):
    pass


# twisted conjugacy
class NonIntegerSum(ReidemeisterError, ArithmeticError):
    """An exact count that must be integral came out fractional (bug signal)."""


class HypothesisViolated(ReidemeisterError, ValueError):
    def __init__(self, which):
        super().__init__(f"hypothesis violated: {which}")
        self.which = which


class EnumerationCapExceeded(ReidemeisterError):
    def __init__(self, count, cap):
        super().__init__(f"enumeration produced more than {cap} maps (reached {count})")
        self.count = count
        self.cap = cap


class TrivialGroup(ReidemeisterError, ValueError):
    pass


# characters
class LiftingFailure(ReidemeisterError, ArithmeticError):
    pass


class PrimeSearchExhausted(ReidemeisterError):
    pass


class NonRationalResult(ReidemeisterError, ArithmeticError):
    pass


class InternalMismatch(ReidemeisterError, AssertionError):
    pass


class RowMatchFailure(ReidemeisterError, ArithmeticError):
    pass


# congruences
class ThetaConditionViolated(ReidemeisterError, ValueError):
    pass


class NotPrime(ReidemeisterError, ValueError):
    pass


# io
class LoadError(ReidemeisterError):
    pass
