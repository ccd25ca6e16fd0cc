"""Exception types raised across the package."""


class FglabError(Exception):
    """Base class for all library errors."""


class RingMismatch(FglabError):
    pass


class InexactDivision(FglabError):
    """A division (or lattice solve) has no solution in the working ring."""


class NotInvertible(FglabError):
    pass


class NonInvertibleLeadingCoefficient(NotInvertible):
    pass


class NonNilpotentSubstitution(FglabError):
    pass


class VarMismatch(FglabError):
    pass


class DimensionMismatch(FglabError):
    pass


class NonHomogeneous(FglabError):
    pass


class ZeroSeries(FglabError):
    pass


class IncompatibleMorphisms(FglabError):
    pass


class IndexOutOfRange(FglabError):
    pass


class BoundExceeded(FglabError):
    pass


class NonSymmetricResult(FglabError):
    pass


class BadRepresentatives(FglabError):
    pass


class MorphismInvalid(FglabError):
    pass


class SingularSystem(FglabError):
    pass


class Unstabilized(FglabError):
    pass


class TruncationError(FglabError):
    """The requested result needs more precision than the inputs carry."""


class TorsionCoefficients(FglabError):
    """An algorithm that divides by integers was given a ring with torsion."""


class NotInLattice(FglabError):
    """An element of Z[b] (or Q[b]) is not in the Lazard ring."""
