class CayleyException(Exception):
    """
    Base class for the workbench's custom exceptions
    """
    pass


class RingMismatch(CayleyException):
    """
    Exception for when elements of different base rings meet in one operation.
    Elements are never coerced between rings.
    """
    pass


class RingParseError(CayleyException, ValueError):
    """
    Exception for malformed ring-spec strings, such as "F4" (composite
    characteristic) or "Z/1"
    """
    pass


class NotAUnit(CayleyException, ArithmeticError):
    """
    Exception for when a ring element without multiplicative inverse is inverted
    """
    pass


class InfiniteRing(CayleyException):
    """
    Exception for when an enumeration or exhaustive search is requested over
    Z or Q
    """
    pass


class SpecMismatch(CayleyException):
    """
    Exception for when elements of different algebras meet in one operation
    """
    pass


class NotInvertible(CayleyException, ArithmeticError):
    """
    Exception for when a matrix whose determinant is not a unit is inverted
    """
    pass


class InvalidAlgebra(CayleyException, ValueError):
    """
    Exception for algebra descriptions that violate a construction invariant,
    e.g. a quaternion parameter that is not a unit.

    Parameters
    ----------
    field : str
        The name of the offending field, as used in algebra description files
    message : str
        Human readable explanation
    """
    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field


class RankMismatch(CayleyException):
    """
    Exception for vectors or maps whose length does not match the rank they are
    used with
    """
    pass


class CharTwo(CayleyException):
    """
    Exception for operations that need 2 to be a unit in the base ring
    """
    pass


class Singular(CayleyException):
    """
    Exception for when a quadratic form turns out to be singular where a
    non-singular one is required
    """
    pass


class NotNormOne(CayleyException):
    """
    Exception for when an element outside SL1 is passed where norm one is required
    """
    pass


class NonAssociativeKind(CayleyException):
    """
    Exception for operations restricted to the associative kinds (M2, quaternion)
    """
    pass


class NotOrthogonal(CayleyException):
    """
    Exception for when a map does not preserve the quadratic form it is checked against
    """
    pass


class UnsupportedRing(CayleyException):
    """
    Exception for a base ring an operation has no definition for, such as the
    Dickson invariant over Z/4
    """
    pass


class BudgetExceeded(CayleyException):
    """
    Exception for when a search or scan exceeds its work budget
    """
    pass


class UnknownClaim(CayleyException):
    """
    Exception for when a claim id can't be found in the claim registry
    """
    pass


class DuplicateClaim(CayleyException):
    """
    Exception for when a claim id is registered twice
    """
    pass


class NotClosed(CayleyException):
    """
    Exception for an enumerated point set that is not a group: missing the
    identity, or not closed under products or inverses
    """
    pass
